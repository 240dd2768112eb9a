//! Collected command outputs, written in one pass once a command succeeds.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use sotmram_core::report::csv_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

pub struct Table {
    pub name: String,
    pub csv: String,
    pub json: Value,
}

#[derive(Default)]
pub struct Artifacts {
    pub tables: Vec<Table>,
    pub charts: Vec<(String, String)>,
    /// Extra JSON documents (file stem, value), written in every format.
    pub documents: Vec<(String, Value)>,
}

impl Artifacts {
    pub fn table<T: Serialize>(&mut self, name: &str, rows: &[T]) -> Result<()> {
        self.tables.push(Table {
            name: name.into(),
            csv: csv_string(rows)?,
            json: serde_json::to_value(rows)?,
        });
        Ok(())
    }

    pub fn chart(&mut self, name: &str, svg: String) {
        self.charts.push((name.into(), svg));
    }

    pub fn document<T: Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        self.documents.push((name.into(), serde_json::to_value(v)?));
        Ok(())
    }

    /// Files to write under `--out`: CSV always, plus JSON or SVG on request.
    pub fn files(&self, format: Format) -> Result<Vec<(PathBuf, String)>> {
        let mut out = Vec::new();
        for t in &self.tables {
            out.push((PathBuf::from(format!("{}.csv", t.name)), t.csv.clone()));
            if format == Format::Json {
                out.push((PathBuf::from(format!("{}.json", t.name)), pretty(&t.json)?));
            }
        }
        for (name, v) in &self.documents {
            out.push((PathBuf::from(format!("{name}.json")), pretty(v)?));
        }
        if format == Format::Svg {
            for (name, svg) in &self.charts {
                out.push((PathBuf::from(format!("{name}.svg")), svg.clone()));
            }
        }
        Ok(out)
    }

    /// Text printed when no output directory is given: the first table as
    /// CSV, every table and document as one JSON object, or the first chart.
    pub fn stdout(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => Ok(self
                .tables
                .first()
                .map(|t| t.csv.clone())
                .or_else(|| self.documents.first().map(|d| pretty(&d.1).unwrap_or_default() + "\n"))
                .unwrap_or_default()),
            Format::Json => {
                let mut m = serde_json::Map::new();
                for t in &self.tables {
                    m.insert(t.name.clone(), t.json.clone());
                }
                for (n, v) in &self.documents {
                    m.insert(n.clone(), v.clone());
                }
                Ok(pretty(&Value::Object(m))? + "\n")
            }
            Format::Svg => self
                .charts
                .first()
                .map(|c| c.1.clone())
                .context("this command produces no chart"),
        }
    }

    pub fn emit(&self, out: Option<&Path>, format: Format) -> Result<()> {
        match out {
            Some(dir) => {
                let files = self.files(format)?;
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, text) in files {
                    let p = dir.join(name);
                    std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                }
            }
            None => print!("{}", self.stdout(format)?),
        }
        Ok(())
    }
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}
