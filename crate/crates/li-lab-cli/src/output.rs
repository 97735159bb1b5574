//! Row collection and emission: CSV to stdout (config echoed as `#`
//! comments), JSON with an embedded config object, and optional gnuplot
//! data/script files.

use crate::{CliError, RunConfig};
use rug::Float;

/// Render a big float with `sig` significant digits, in a form that parses
/// back losslessly at that digit count. (rug's e-format precision counts
/// significant digits.)
pub fn fmt_float(value: &Float, sig: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    format!("{:.*e}", sig.max(1), value)
}

pub struct RunReport {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    summaries: Vec<String>,
    config_json: serde_json::Value,
}

impl RunReport {
    pub fn new(config: &RunConfig, columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            summaries: Vec::new(),
            config_json: serde_json::to_value(config).expect("config serializes"),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summary(&mut self, line: String) {
        self.summaries.push(line);
    }

    pub fn emit(&self, config: &RunConfig) -> Result<(), CliError> {
        eprintln!(
            "# config {}",
            serde_json::to_string(&self.config_json).expect("config serializes")
        );
        match config.format.as_str() {
            "json" => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, value) in self.columns.iter().zip(row) {
                            obj.insert(name.to_string(), serde_json::Value::String(value.clone()));
                        }
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let doc = serde_json::json!({
                    "config": self.config_json,
                    "rows": rows,
                    "summary": self.summaries,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("doc serializes"));
            }
            _ => {
                println!(
                    "# config {}",
                    serde_json::to_string(&self.config_json).expect("config serializes")
                );
                println!("{}", self.columns.join(","));
                for row in &self.rows {
                    println!("{}", row.join(","));
                }
                for s in &self.summaries {
                    println!("# {s}");
                }
            }
        }
        if let Some(prefix) = &config.plot {
            self.write_plot(prefix)?;
        }
        Ok(())
    }

    fn write_plot(&self, prefix: &str) -> Result<(), CliError> {
        let dat_path = format!("{prefix}.dat");
        let gp_path = format!("{prefix}.gp");
        let mut dat = String::new();
        dat.push_str(&format!("# {}\n", self.columns.join(" ")));
        for row in &self.rows {
            dat.push_str(&row.join(" "));
            dat.push('\n');
        }
        std::fs::write(&dat_path, dat)
            .map_err(|e| CliError::validation(format!("cannot write {dat_path}: {e}")))?;

        let mut gp = String::new();
        gp.push_str("set terminal pngcairo size 1100,700\n");
        gp.push_str(&format!("set output '{prefix}.png'\n"));
        gp.push_str("set xlabel 'n'\nset grid\n");
        let numeric_cols = self.columns.len().min(4);
        let mut plots = Vec::new();
        for c in 2..=numeric_cols {
            plots.push(format!(
                "'{dat_path}' using 1:{c} with lines title '{}'",
                self.columns[c - 1].replace('_', " ")
            ));
        }
        gp.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
        std::fs::write(&gp_path, gp)
            .map_err(|e| CliError::validation(format!("cannot write {gp_path}: {e}")))?;
        Ok(())
    }
}
