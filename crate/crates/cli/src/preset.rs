//! Link presets: `key = value` files mapped onto long option names.
//!
//! Lines are `name = value` (or `name=value`), `#` starts a comment,
//! blank lines are skipped. Names are the long flag names without the
//! leading dashes, e.g. `distance-km = 1000`. Explicit flags always win
//! over preset values.

use qlink_core::Error;
use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Clone, Default)]
pub struct Preset {
    values: HashMap<String, String>,
}

impl Preset {
    pub fn load(path: &Path) -> Result<Preset, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::usage(format!("cannot read preset {}: {e}", path.display()))
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    fn parse(text: &str, origin: &str) -> Result<Preset, Error> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::usage(format!(
                    "{origin}:{}: expected `name = value`, got `{raw}`",
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Preset { values })
    }

    /// Fall back to the preset for a flag the user did not pass.
    /// The flag name is the long option without dashes.
    pub fn resolve<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        name: &str,
    ) -> Result<Option<T>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(name) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::usage(format!("preset value `{raw}` is invalid for {name}"))
            }),
        }
    }
}
