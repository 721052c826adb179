//! Flat key-value config files: one `key = value` per line, `#` comments,
//! blank lines ignored. Unknown keys and duplicate keys are errors so typos
//! fail loudly instead of silently falling back to defaults.

use std::collections::BTreeMap;

use photon_graviton::gaussian::SqueezeParams;
use photon_graviton::{Error, Result};

/// Parsed scenario parameters with defaults applied.
///
/// Squeezing accepts `r` or `squeeze_db` (mutually exclusive); the graviton
/// source accepts an explicit `z` or a primordial cutoff `f_c_hz`
/// (mutually exclusive, `z` wins the default of 0 when neither is given).
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub b_tesla: [f64; 3],
    pub length_m: f64,
    pub frequency_hz: f64,
    pub squeeze_r: f64,
    pub squeeze_phase: f64,
    pub coherent_amp: f64,
    pub coherent_phase: f64,
    pub graviton_z: f64,
    pub graviton_chi: f64,
    pub f_c_hz: Option<f64>,
    pub n_max: usize,
    pub oracle: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            b_tesla: [0.0, 10.0, 0.0],
            length_m: 1e7,
            frequency_hz: 1e9,
            squeeze_r: 0.0,
            squeeze_phase: 0.0,
            coherent_amp: 0.0,
            coherent_phase: 0.0,
            graviton_z: 0.0,
            graviton_chi: 0.0,
            f_c_hz: None,
            n_max: 24,
            oracle: false,
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "b_tesla_x",
    "b_tesla_y",
    "b_tesla_z",
    "length_m",
    "frequency_hz",
    "r",
    "squeeze_db",
    "squeeze_phase",
    "coherent_amp",
    "coherent_phase",
    "z",
    "chi",
    "f_c_hz",
    "n_max",
    "oracle",
];

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .map_err(|_| Error::Config(format!("key '{}': '{}' is not a number", key, raw)))
}

fn parse_bool(key: &str, raw: &str) -> Result<bool> {
    match raw {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(Error::Config(format!(
            "key '{}': '{}' is not a boolean (use true/false)",
            key, other
        ))),
    }
}

/// Parse config text into key-value pairs, rejecting unknown and duplicate
/// keys.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut pairs = BTreeMap::new();
    for (line_no, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected 'key = value', got '{}'",
                line_no + 1,
                line
            ))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "line {}: unknown key '{}'; known keys: {}",
                line_no + 1,
                key,
                KNOWN_KEYS.join(", ")
            )));
        }
        if pairs.insert(key.clone(), value).is_some() {
            return Err(Error::Config(format!(
                "line {}: duplicate key '{}'",
                line_no + 1,
                key
            )));
        }
    }
    Ok(pairs)
}

/// Parse a full config file into a `ScenarioConfig`, validating every value
/// against the guards of the modules that will consume it.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let pairs = parse_pairs(text)?;
    let mut config = ScenarioConfig::default();

    if pairs.contains_key("r") && pairs.contains_key("squeeze_db") {
        return Err(Error::Config(
            "'r' and 'squeeze_db' are mutually exclusive; give the squeezing in one convention"
                .into(),
        ));
    }
    if pairs.contains_key("z") && pairs.contains_key("f_c_hz") {
        return Err(Error::Config(
            "'z' and 'f_c_hz' are mutually exclusive; give either an explicit squeezing or a primordial cutoff"
                .into(),
        ));
    }

    for (key, raw) in &pairs {
        match key.as_str() {
            "b_tesla_x" => config.b_tesla[0] = parse_f64(key, raw)?,
            "b_tesla_y" => config.b_tesla[1] = parse_f64(key, raw)?,
            "b_tesla_z" => config.b_tesla[2] = parse_f64(key, raw)?,
            "length_m" => config.length_m = parse_f64(key, raw)?,
            "frequency_hz" => config.frequency_hz = parse_f64(key, raw)?,
            "r" => config.squeeze_r = parse_f64(key, raw)?,
            "squeeze_db" => {
                let db = parse_f64(key, raw)?;
                config.squeeze_r = SqueezeParams::from_db(db, 0.0)
                    .map_err(|e| Error::Config(format!("key 'squeeze_db': {}", e)))?
                    .r();
            }
            "squeeze_phase" => config.squeeze_phase = parse_f64(key, raw)?,
            "coherent_amp" => config.coherent_amp = parse_f64(key, raw)?,
            "coherent_phase" => config.coherent_phase = parse_f64(key, raw)?,
            "z" => config.graviton_z = parse_f64(key, raw)?,
            "chi" => config.graviton_chi = parse_f64(key, raw)?,
            "f_c_hz" => config.f_c_hz = Some(parse_f64(key, raw)?),
            "n_max" => {
                config.n_max = raw.parse::<usize>().map_err(|_| {
                    Error::Config(format!(
                        "key 'n_max': '{}' is not a positive integer",
                        raw
                    ))
                })?;
            }
            "oracle" => config.oracle = parse_bool(key, raw)?,
            _ => unreachable!("unknown keys rejected above"),
        }
    }
    validate_config(&config)?;
    Ok(config)
}

/// Range-check every field; parsed configs and programmatic overrides both
/// go through here before any computation.
pub fn validate_config(config: &ScenarioConfig) -> Result<()> {
    for (axis, value) in ["x", "y", "z"].iter().zip(config.b_tesla.iter()) {
        if !value.is_finite() {
            return Err(Error::Config(format!(
                "b_tesla_{} must be finite, got {}",
                axis, value
            )));
        }
    }
    if !config.length_m.is_finite() || config.length_m < 0.0 {
        return Err(Error::Config(format!(
            "length_m must be finite and nonnegative, got {}",
            config.length_m
        )));
    }
    if !config.frequency_hz.is_finite() || config.frequency_hz <= 0.0 {
        return Err(Error::Config(format!(
            "frequency_hz must be finite and positive, got {}",
            config.frequency_hz
        )));
    }
    if !config.squeeze_r.is_finite() || config.squeeze_r < 0.0 {
        return Err(Error::Config(format!(
            "squeezing amplitude must be finite and nonnegative, got {}",
            config.squeeze_r
        )));
    }
    if !config.coherent_amp.is_finite() || config.coherent_amp < 0.0 {
        return Err(Error::Config(format!(
            "coherent_amp must be finite and nonnegative, got {}",
            config.coherent_amp
        )));
    }
    if !config.graviton_z.is_finite() || config.graviton_z < 0.0 {
        return Err(Error::Config(format!(
            "z must be finite and nonnegative, got {}",
            config.graviton_z
        )));
    }
    if let Some(f_c) = config.f_c_hz {
        if !f_c.is_finite() || f_c <= 0.0 {
            return Err(Error::Config(format!(
                "f_c_hz must be finite and positive, got {}",
                f_c
            )));
        }
    }
    if config.n_max == 0 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    if !config.squeeze_phase.is_finite()
        || !config.coherent_phase.is_finite()
        || !config.graviton_chi.is_finite()
    {
        return Err(Error::Config("phases must be finite".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_defaults_from_empty_config() {
        let config = parse_config("").unwrap();
        assert_eq!(config.b_tesla, [0.0, 10.0, 0.0]);
        assert_eq!(config.length_m, 1e7);
        assert_eq!(config.frequency_hz, 1e9);
        assert_eq!(config.n_max, 24);
        assert!(!config.oracle);
    }

    #[test]
    fn test_comments_and_blank_lines_ignored() {
        let text = "\n# a comment\nlength_m = 2e7  # trailing comment\n\n";
        let config = parse_config(text).unwrap();
        assert_eq!(config.length_m, 2e7);
    }

    #[test]
    fn test_unknown_key_rejected() {
        assert!(matches!(
            parse_config("lenght_m = 1e7"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn test_duplicate_key_rejected() {
        assert!(matches!(
            parse_config("length_m = 1\nlength_m = 2"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn test_db_and_r_exclusive() {
        assert!(matches!(
            parse_config("r = 0.5\nsqueeze_db = 8"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn test_db_converts_to_r() {
        let config = parse_config("squeeze_db = 8").unwrap();
        assert!((config.squeeze_r - 8.0 * std::f64::consts::LN_10 / 20.0).abs() < 1e-15);
    }

    #[test]
    fn test_z_and_cutoff_exclusive() {
        assert!(matches!(
            parse_config("z = 0.5\nf_c_hz = 1e9"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn test_value_guards() {
        assert!(parse_config("frequency_hz = 0").is_err());
        assert!(parse_config("r = -0.1").is_err());
        assert!(parse_config("n_max = 0").is_err());
        assert!(parse_config("coherent_amp = nope").is_err());
        assert!(parse_config("oracle = maybe").is_err());
    }

    #[test]
    fn test_missing_equals_rejected() {
        assert!(matches!(
            parse_config("just some words"),
            Err(Error::Config(_))
        ));
    }
}
