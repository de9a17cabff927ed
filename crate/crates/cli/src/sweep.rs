//! Grid sweeps and their CSV/JSON emission.
//!
//! Grid points are laid out row-major (axis1 outer, axis2 inner) and
//! evaluated independently; records are emitted in grid order. CSV uses
//! `,` as delimiter, `.` as decimal separator, LF line endings and 12
//! significant digits, so identical configurations produce byte-identical
//! files. JSON carries the same field names.

use std::io::Write;

use cvmem::{compare, InputStateParams, MemoryCellParams};

use crate::config::{ChannelSpec, RunConfig, SweepAxis, SweepParam};

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub axis_values: Vec<f64>,
    pub en_a: f64,
    pub en_b: f64,
    pub delta_en: f64,
    pub f_a: f64,
    pub f_b: f64,
    pub delta_f_bar: f64,
    pub nu_a: f64,
    pub nu_b: f64,
    pub channel_physical: bool,
}

/// Aggregate numbers printed after a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub points: usize,
    pub frac_delta_en_positive: f64,
    pub frac_delta_en_negative: f64,
    pub frac_delta_f_positive: f64,
    pub frac_physical: f64,
    pub min_delta_en: f64,
    pub max_delta_en: f64,
}

fn apply_axis(
    param: SweepParam,
    value: f64,
    input: &mut InputStateParams,
    cells: &mut Option<(MemoryCellParams, MemoryCellParams)>,
) -> Result<(), String> {
    let cell_err = || "cell-parameter axis without cell parameters".to_string();
    match param {
        SweepParam::S => input.s = value,
        SweepParam::N1 => input.n1 = value,
        SweepParam::N2 => input.n2 = value,
        _ => {
            let (c1, c2) = cells.as_mut().ok_or_else(cell_err)?;
            match param {
                SweepParam::DeltaAt1 => c1.delta_at = value,
                SweepParam::DeltaAt2 => c2.delta_at = value,
                SweepParam::G1 => c1.g = value,
                SweepParam::G2 => c2.g = value,
                SweepParam::DeltaQ1 => c1.delta_q = value,
                SweepParam::DeltaQ2 => c2.delta_q = value,
                SweepParam::DeltaP1 => c1.delta_p = value,
                SweepParam::DeltaP2 => c2.delta_p = value,
                _ => unreachable!(),
            }
        }
    }
    Ok(())
}

fn grid_indices(axes: &[SweepAxis]) -> Vec<Vec<usize>> {
    match axes {
        [a] => (0..a.steps).map(|i| vec![i]).collect(),
        [a, b] => {
            let mut out = Vec::with_capacity(a.steps * b.steps);
            for i in 0..a.steps {
                for j in 0..b.steps {
                    out.push(vec![i, j]);
                }
            }
            out
        }
        _ => vec![vec![]],
    }
}

/// Evaluate the whole grid in deterministic row-major order.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepRecord>, String> {
    let base_cells = match &config.spec {
        ChannelSpec::Cells { cell1, cell2 } => Some((*cell1, *cell2)),
        ChannelSpec::Direct(_) => None,
    };
    let mut records = Vec::new();
    for indices in grid_indices(&config.axes) {
        let mut input = config.input;
        let mut cells = base_cells;
        let mut axis_values = Vec::with_capacity(indices.len());
        for (axis, &idx) in config.axes.iter().zip(&indices) {
            let value = axis.value(idx);
            axis_values.push(value);
            apply_axis(axis.param, value, &mut input, &mut cells)?;
        }
        // revalidate after substitution so bad grid ranges fail loudly
        let input = InputStateParams::new(input.s, input.n1, input.n2)
            .map_err(|e| format!("grid point {axis_values:?}: {e}"))?;
        let channel = match (&config.spec, cells) {
            (ChannelSpec::Direct(ch), _) => *ch,
            (ChannelSpec::Cells { .. }, Some((c1, c2))) => {
                let c1 = MemoryCellParams::new(c1.g, c1.z_sq, c1.delta_at, c1.delta_q, c1.delta_p)
                    .map_err(|e| format!("grid point {axis_values:?}: cell1: {e}"))?;
                let c2 = MemoryCellParams::new(c2.g, c2.z_sq, c2.delta_at, c2.delta_q, c2.delta_p)
                    .map_err(|e| format!("grid point {axis_values:?}: cell2: {e}"))?;
                cvmem::channel_from_cells(&c1, &c2, config.convention)
            }
            _ => unreachable!(),
        };
        let pair = compare(&input, &channel).map_err(|e| format!("grid point {axis_values:?}: {e}"))?;
        records.push(SweepRecord {
            axis_values,
            en_a: pair.metrics_a.log_neg,
            en_b: pair.metrics_b.log_neg,
            delta_en: pair.delta_logneg,
            f_a: pair.metrics_a.fidelity,
            f_b: pair.metrics_b.fidelity,
            delta_f_bar: pair.delta_fidelity,
            nu_a: pair.metrics_a.nu_tilde,
            nu_b: pair.metrics_b.nu_tilde,
            channel_physical: channel.is_physical(),
        });
    }
    Ok(records)
}

pub fn summarize(records: &[SweepRecord]) -> SweepSummary {
    let n = records.len().max(1) as f64;
    SweepSummary {
        points: records.len(),
        frac_delta_en_positive: records.iter().filter(|r| r.delta_en > 0.0).count() as f64 / n,
        frac_delta_en_negative: records.iter().filter(|r| r.delta_en < 0.0).count() as f64 / n,
        frac_delta_f_positive: records.iter().filter(|r| r.delta_f_bar > 0.0).count() as f64 / n,
        frac_physical: records.iter().filter(|r| r.channel_physical).count() as f64 / n,
        min_delta_en: records.iter().map(|r| r.delta_en).fold(f64::INFINITY, f64::min),
        max_delta_en: records
            .iter()
            .map(|r| r.delta_en)
            .fold(f64::NEG_INFINITY, f64::max),
    }
}

/// 12 significant digits, `.` decimal separator.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.11e}")
}

pub const VALUE_COLUMNS: [&str; 9] = [
    "en_a",
    "en_b",
    "delta_en",
    "f_a",
    "f_b",
    "delta_f_bar",
    "nu_a",
    "nu_b",
    "channel_physical",
];

pub fn write_csv(
    mut w: impl Write,
    axes: &[SweepAxis],
    records: &[SweepRecord],
) -> std::io::Result<()> {
    let mut header: Vec<&str> = axes.iter().map(|a| a.param.name()).collect();
    header.extend(VALUE_COLUMNS);
    w.write_all(header.join(",").as_bytes())?;
    w.write_all(b"\n")?;
    for r in records {
        let mut fields: Vec<String> = r.axis_values.iter().map(|&v| fmt_value(v)).collect();
        fields.extend([
            fmt_value(r.en_a),
            fmt_value(r.en_b),
            fmt_value(r.delta_en),
            fmt_value(r.f_a),
            fmt_value(r.f_b),
            fmt_value(r.delta_f_bar),
            fmt_value(r.nu_a),
            fmt_value(r.nu_b),
            (if r.channel_physical { "true" } else { "false" }).to_string(),
        ]);
        w.write_all(fields.join(",").as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_json(
    mut w: impl Write,
    axes: &[SweepAxis],
    records: &[SweepRecord],
) -> std::io::Result<()> {
    let array: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            let mut obj = serde_json::Map::new();
            for (axis, &v) in axes.iter().zip(&r.axis_values) {
                obj.insert(axis.param.name().to_string(), v.into());
            }
            obj.insert("en_a".into(), r.en_a.into());
            obj.insert("en_b".into(), r.en_b.into());
            obj.insert("delta_en".into(), r.delta_en.into());
            obj.insert("f_a".into(), r.f_a.into());
            obj.insert("f_b".into(), r.f_b.into());
            obj.insert("delta_f_bar".into(), r.delta_f_bar.into());
            obj.insert("nu_a".into(), r.nu_a.into());
            obj.insert("nu_b".into(), r.nu_b.into());
            obj.insert("channel_physical".into(), r.channel_physical.into());
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::to_writer_pretty(&mut w, &array)?;
    w.write_all(b"\n")
}
