//! Run-configuration file parsing.
//!
//! The format is a flat key-value file with sections:
//!
//! ```text
//! seed = 42                 # top-level keys before any section
//! convention = attenuation  # literal | attenuation
//!
//! [input_state]
//! s = 4.0
//! n1 = 1.0
//! n2 = 1.0
//!
//! [cell1]                   # one section per memory cell
//! g = 0.85
//! z_sq = 6.4
//! delta_at = 0.9
//! delta_q = 0.2
//! delta_p = 0.4
//!
//! [cell2]
//! ...
//!
//! [channel]                 # alternative to cell1/cell2: direct (X, Y)
//! xi1 = 1.0
//! y_q1 = 0.50625
//! ...
//!
//! [sweep]                   # up to two axes: name min max steps
//! axis1 = delta_at1 0.0 1.2 25
//! axis2 = delta_at2 0.0 1.2 25
//!
//! [output]
//! path = sweep.csv
//! format = csv              # csv | json
//! ```
//!
//! `#` and `;` start comments. Keys are the transliterated symbols used
//! throughout the crate (s, n1, n2, g, z_sq, delta_at, delta_q, delta_p).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use cvmem::{
    channel_from_cells, InputStateParams, LossNoiseConvention, MemoryCellParams, MemoryChannel,
};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parameter that a sweep axis can scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    DeltaAt1,
    DeltaAt2,
    G1,
    G2,
    DeltaQ1,
    DeltaQ2,
    DeltaP1,
    DeltaP2,
    S,
    N1,
    N2,
}

impl SweepParam {
    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        Ok(match name {
            "delta_at1" => Self::DeltaAt1,
            "delta_at2" => Self::DeltaAt2,
            "g1" => Self::G1,
            "g2" => Self::G2,
            "delta_q1" => Self::DeltaQ1,
            "delta_q2" => Self::DeltaQ2,
            "delta_p1" => Self::DeltaP1,
            "delta_p2" => Self::DeltaP2,
            "s" => Self::S,
            "n1" => Self::N1,
            "n2" => Self::N2,
            other => return err(format!("unknown sweep parameter `{other}`")),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::DeltaAt1 => "delta_at1",
            Self::DeltaAt2 => "delta_at2",
            Self::G1 => "g1",
            Self::G2 => "g2",
            Self::DeltaQ1 => "delta_q1",
            Self::DeltaQ2 => "delta_q2",
            Self::DeltaP1 => "delta_p1",
            Self::DeltaP2 => "delta_p2",
            Self::S => "s",
            Self::N1 => "n1",
            Self::N2 => "n2",
        }
    }

    /// True when the parameter lives on a memory cell (needs cell
    /// parameters rather than a direct channel).
    pub fn is_cell_param(self) -> bool {
        !matches!(self, Self::S | Self::N1 | Self::N2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn value(&self, index: usize) -> f64 {
        if self.steps == 1 {
            return self.min;
        }
        self.min + (self.max - self.min) * index as f64 / (self.steps - 1) as f64
    }
}

/// Memory description: experimental cells or a direct channel override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelSpec {
    Cells {
        cell1: MemoryCellParams,
        cell2: MemoryCellParams,
    },
    Direct(MemoryChannel),
}

impl ChannelSpec {
    pub fn channel(&self, convention: LossNoiseConvention) -> MemoryChannel {
        match self {
            Self::Cells { cell1, cell2 } => channel_from_cells(cell1, cell2, convention),
            Self::Direct(ch) => *ch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => err(format!("unknown output format `{other}` (csv | json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: InputStateParams,
    pub spec: ChannelSpec,
    pub axes: Vec<SweepAxis>,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
    pub convention: LossNoiseConvention,
}

type Section = BTreeMap<String, String>;

fn parse_sections(text: &str) -> Result<BTreeMap<String, Section>, ConfigError> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current = String::new(); // "" = top level
    sections.insert(String::new(), Section::new());
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find(['#', ';']) {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(format!("line {}: malformed section header", lineno + 1));
            };
            current = name.trim().to_string();
            sections.entry(current.clone()).or_default();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(format!("line {}: expected `key = value`", lineno + 1));
        };
        let prev = sections
            .get_mut(&current)
            .unwrap()
            .insert(key.trim().to_string(), value.trim().to_string());
        if prev.is_some() {
            return err(format!("line {}: duplicate key `{}`", lineno + 1, key.trim()));
        }
    }
    Ok(sections)
}

fn get_f64(section: &Section, sec_name: &str, key: &str) -> Result<f64, ConfigError> {
    let Some(v) = section.get(key) else {
        return err(format!("missing key `{key}` in [{sec_name}]"));
    };
    v.parse::<f64>()
        .map_err(|_| ConfigError(format!("[{sec_name}] {key} = `{v}` is not a number")))
}

fn get_f64_or(section: &Section, sec_name: &str, key: &str, default: f64) -> Result<f64, ConfigError> {
    match section.get(key) {
        None => Ok(default),
        Some(_) => get_f64(section, sec_name, key),
    }
}

fn parse_cell(section: &Section, name: &str) -> Result<MemoryCellParams, ConfigError> {
    MemoryCellParams::new(
        get_f64_or(section, name, "g", 1.0)?,
        get_f64(section, name, "z_sq")?,
        get_f64(section, name, "delta_at")?,
        get_f64_or(section, name, "delta_q", 0.0)?,
        get_f64_or(section, name, "delta_p", 0.0)?,
    )
    .map_err(|e| ConfigError(format!("[{name}]: {e}")))
}

fn parse_axis(spec: &str) -> Result<SweepAxis, ConfigError> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    if parts.len() != 4 {
        return err(format!("sweep axis `{spec}` must be `name min max steps`"));
    }
    let param = SweepParam::parse(parts[0])?;
    let min: f64 = parts[1]
        .parse()
        .map_err(|_| ConfigError(format!("axis min `{}` is not a number", parts[1])))?;
    let max: f64 = parts[2]
        .parse()
        .map_err(|_| ConfigError(format!("axis max `{}` is not a number", parts[2])))?;
    let steps: usize = parts[3]
        .parse()
        .map_err(|_| ConfigError(format!("axis steps `{}` is not an integer", parts[3])))?;
    if steps < 2 {
        return err("sweep axes need at least 2 steps");
    }
    if max.is_nan() || min.is_nan() || max <= min {
        return err("sweep axis needs max > min");
    }
    Ok(SweepAxis {
        param,
        min,
        max,
        steps,
    })
}

pub fn parse_convention(s: &str) -> Result<LossNoiseConvention, ConfigError> {
    match s {
        "literal" => Ok(LossNoiseConvention::LiteralFloorZero),
        "attenuation" => Ok(LossNoiseConvention::AttenuationStandard),
        other => err(format!(
            "unknown loss-noise convention `{other}` (literal | attenuation)"
        )),
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let sections = parse_sections(text)?;
    let known = [
        "", "input_state", "cell1", "cell2", "channel", "sweep", "output",
    ];
    for name in sections.keys() {
        if !known.contains(&name.as_str()) {
            return err(format!("unknown section [{name}]"));
        }
    }

    let top = &sections[""];
    let seed = match top.get("seed") {
        None => 0,
        Some(v) => v
            .parse::<u64>()
            .map_err(|_| ConfigError(format!("seed = `{v}` is not an unsigned integer")))?,
    };
    let convention = match top.get("convention") {
        None => LossNoiseConvention::default(),
        Some(v) => parse_convention(v)?,
    };

    let Some(input_sec) = sections.get("input_state") else {
        return err("missing [input_state] section");
    };
    let input = InputStateParams::new(
        get_f64(input_sec, "input_state", "s")?,
        get_f64_or(input_sec, "input_state", "n1", 1.0)?,
        get_f64_or(input_sec, "input_state", "n2", 1.0)?,
    )
    .map_err(|e| ConfigError(format!("[input_state]: {e}")))?;

    let spec = match (
        sections.get("cell1"),
        sections.get("cell2"),
        sections.get("channel"),
    ) {
        (Some(c1), Some(c2), None) => ChannelSpec::Cells {
            cell1: parse_cell(c1, "cell1")?,
            cell2: parse_cell(c2, "cell2")?,
        },
        (None, None, Some(ch)) => ChannelSpec::Direct(
            MemoryChannel::new(
                get_f64_or(ch, "channel", "xi1", 1.0)?,
                get_f64_or(ch, "channel", "xi2", 1.0)?,
                get_f64_or(ch, "channel", "y_q1", 0.0)?,
                get_f64_or(ch, "channel", "y_p1", 0.0)?,
                get_f64_or(ch, "channel", "y_q2", 0.0)?,
                get_f64_or(ch, "channel", "y_p2", 0.0)?,
            )
            .map_err(|e| ConfigError(format!("[channel]: {e}")))?,
        ),
        (None, None, None) => return err("provide [cell1] and [cell2], or a [channel] override"),
        (Some(_), None, None) | (None, Some(_), None) => {
            return err("both [cell1] and [cell2] are required")
        }
        _ => return err("[channel] cannot be combined with [cell1]/[cell2]"),
    };

    let mut axes = Vec::new();
    if let Some(sweep) = sections.get("sweep") {
        for key in ["axis1", "axis2"] {
            if let Some(specline) = sweep.get(key) {
                axes.push(parse_axis(specline)?);
            }
        }
        if sweep.keys().any(|k| k != "axis1" && k != "axis2") {
            return err("[sweep] accepts only `axis1` and `axis2`");
        }
        if axes.is_empty() {
            return err("[sweep] present but no axes defined");
        }
    }
    for axis in &axes {
        if axis.param.is_cell_param() && !matches!(spec, ChannelSpec::Cells { .. }) {
            return err(format!(
                "sweep axis `{}` needs [cell1]/[cell2] parameters, not a direct [channel]",
                axis.param.name()
            ));
        }
    }
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return err("the two sweep axes must scan different parameters");
    }

    let (out_path, format) = match sections.get("output") {
        None => (None, OutputFormat::Csv),
        Some(out) => {
            let path = out.get("path").map(PathBuf::from);
            let format = match out.get("format") {
                None => OutputFormat::Csv,
                Some(f) => OutputFormat::parse(f)?,
            };
            (path, format)
        }
    };

    Ok(RunConfig {
        input,
        spec,
        axes,
        out_path,
        format,
        seed,
        convention,
    })
}
