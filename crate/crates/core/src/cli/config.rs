//! Flat `key=value` configuration files.
//!
//! Keys are the long flag names without the leading dashes. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    Count,
    Word,
    Flag,
}

const KEYS: &[(&str, Kind)] = &[
    ("units", Kind::Word),
    ("alpha", Kind::Word),
    ("format", Kind::Word),
    ("out", Kind::Word),
    ("l", Kind::Real),
    ("tau", Kind::Real),
    ("dE", Kind::Real),
    ("dH", Kind::Real),
    ("threshold", Kind::Real),
    ("m", Kind::Real),
    ("Omega", Kind::Real),
    ("omega", Kind::Real),
    ("Q", Kind::Real),
    ("dx", Kind::Real),
    ("no-quantization", Kind::Flag),
    ("l-min", Kind::Real),
    ("l-max", Kind::Real),
    ("tau-min", Kind::Real),
    ("tau-max", Kind::Real),
    ("grid", Kind::Count),
    ("modes", Kind::Count),
    ("steps", Kind::Count),
    ("sweep", Kind::Real),
    ("points", Kind::Count),
    ("n", Kind::Count),
    ("seed", Kind::Count),
    ("cells", Kind::Count),
    ("stats-only", Kind::Flag),
];

/// Validated file contents.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(line_no, format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let kind = KEYS
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, kind)| *kind)
                .ok_or_else(|| usage(line_no, format!("unknown key `{key}`")))?;
            let ok = match kind {
                Kind::Real => value.parse::<f64>().is_ok(),
                Kind::Count => value.parse::<u64>().is_ok(),
                Kind::Flag => value.parse::<bool>().is_ok(),
                Kind::Word => !value.is_empty(),
            };
            if !ok {
                return Err(usage(line_no, format!("invalid value `{value}` for `{key}`")));
            }
            if values.insert(key.to_owned(), value.to_owned()).is_some() {
                return Err(usage(line_no, format!("duplicate key `{key}`")));
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn real(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn count(&self, key: &str) -> Option<u64> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn usage(line: usize, msg: String) -> CliError {
    CliError::Usage(format!("config line {line}: {msg}"))
}

pub fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    ConfigFile::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs() {
        let c = ConfigFile::parse("l=1\ntau=1\n# note\n\nunits = cgs\n").unwrap();
        assert_eq!(c.real("l"), Some(1.0));
        assert_eq!(c.get("units"), Some("cgs"));
    }

    #[test]
    fn reports_line_numbers() {
        let e = ConfigFile::parse("l=abc").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = ConfigFile::parse("l=1\n\nbogus=2").unwrap_err();
        assert!(e.to_string().contains("line 3") && e.to_string().contains("bogus"));
        assert!(ConfigFile::parse("l 1").is_err());
        assert!(ConfigFile::parse("l=1\nl=2").is_err());
    }

    #[test]
    fn empty_file() {
        assert!(ConfigFile::parse("").unwrap().is_empty());
    }
}
