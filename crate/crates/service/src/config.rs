//! Server settings: defaults, then a `key = value` file, then `KGSU_*`
//! environment variables, each overriding the previous layer.

use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerConfig {
    pub bind: String,
    pub port: u16,
    pub data_dir: PathBuf,
    pub max_query_rows: usize,
    /// Allow cross-origin requests from any origin.
    pub cors_allowed: bool,
    pub max_body_bytes: usize,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            bind: "127.0.0.1".to_string(),
            port: 7878,
            data_dir: PathBuf::from("data"),
            max_query_rows: 10_000,
            cors_allowed: false,
            max_body_bytes: 64 * 1024 * 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("{source_name} line {line}: expected 'key = value'")]
    Syntax { source_name: String, line: usize },
    #[error("{source_name}: unknown key '{key}'")]
    UnknownKey { source_name: String, key: String },
    #[error("{source_name}: invalid value '{value}' for '{key}'")]
    InvalidValue {
        source_name: String,
        key: String,
        value: String,
    },
}

fn parse_bool(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

impl ServerConfig {
    /// Applies one setting; `key` is lowercase without the env prefix.
    pub fn set(&mut self, key: &str, value: &str, source_name: &str) -> Result<(), ConfigError> {
        let invalid = || ConfigError::InvalidValue {
            source_name: source_name.to_string(),
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "bind" => self.bind = value.to_string(),
            "port" => self.port = value.parse().ok().filter(|p| *p >= 1).ok_or_else(invalid)?,
            "data_dir" => self.data_dir = PathBuf::from(value),
            "max_query_rows" => self.max_query_rows = value.parse().map_err(|_| invalid())?,
            "cors_allowed" => self.cors_allowed = parse_bool(value).ok_or_else(invalid)?,
            "max_body_bytes" => self.max_body_bytes = value.parse().ok().filter(|n| *n > 0).ok_or_else(invalid)?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    source_name: source_name.to_string(),
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str, source_name: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                source_name: source_name.to_string(),
                line: i + 1,
            })?;
            self.set(&k.trim().to_ascii_lowercase(), v.trim(), source_name)?;
        }
        Ok(())
    }

    /// Applies every `KGSU_<KEY>` variable; other variables are ignored.
    pub fn apply_env<I: IntoIterator<Item = (String, String)>>(&mut self, vars: I) -> Result<(), ConfigError> {
        for (k, v) in vars {
            if let Some(key) = k.strip_prefix("KGSU_") {
                self.set(&key.to_ascii_lowercase(), v.trim(), &k)?;
            }
        }
        Ok(())
    }

    /// Defaults, then the optional file, then the process environment.
    pub fn load(file: Option<&std::path::Path>) -> Result<Self, String> {
        let mut c = Self::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            c.apply_file(&text, &path.display().to_string())
                .map_err(|e| e.to_string())?;
        }
        c.apply_env(std::env::vars()).map_err(|e| e.to_string())?;
        Ok(c)
    }

    pub fn store_path(&self) -> PathBuf {
        self.data_dir.join("store.trig")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layers_override_in_order() {
        let mut c = ServerConfig::default();
        c.apply_file("# comment\nport = 9000\nmax_query_rows=5\n\ncors_allowed = yes\n", "f")
            .unwrap();
        assert_eq!((c.port, c.max_query_rows, c.cors_allowed), (9000, 5, true));
        c.apply_env([
            ("KGSU_PORT".to_string(), "9100".to_string()),
            ("PATH".to_string(), "/bin".to_string()),
            ("KGSU_DATA_DIR".to_string(), "/tmp/x".to_string()),
        ])
        .unwrap();
        assert_eq!(c.port, 9100);
        assert_eq!(c.store_path(), PathBuf::from("/tmp/x/store.trig"));
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = ServerConfig::default();
        assert!(matches!(
            c.apply_file("port 9000", "f"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            c.apply_file("port = 0", "f"),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert!(matches!(
            c.apply_file("port = 70000", "f"),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert!(matches!(
            c.apply_file("colour = red", "f"),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(c
            .apply_env([("KGSU_CORS_ALLOWED".to_string(), "maybe".to_string())])
            .is_err());
    }
}
