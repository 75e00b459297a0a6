//! CSV tables and metadata sidecars.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) if x.is_nan() => "nan".into(),
            Cell::Num(x) if x.is_infinite() => if x > 0.0 { "inf" } else { "-inf" }.into(),
            // 17 significant digits round-trip every double.
            Cell::Num(x) => format!("{x:.16e}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Files of one invocation plus what is needed for its metadata sidecar.
pub struct Run {
    pub out: PathBuf,
    pub name: String,
    pub files: Vec<String>,
    /// Extra informational `key = value` lines.
    pub notes: Vec<(String, String)>,
    pub budget_s: f64,
    started: Instant,
}

impl Run {
    pub fn new(out: &Path, name: &str, budget_s: f64) -> Result<Self, CliError> {
        std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
        Ok(Self {
            out: out.to_path_buf(),
            name: name.to_string(),
            files: Vec::new(),
            notes: Vec::new(),
            budget_s,
            started: Instant::now(),
        })
    }

    pub fn save(&mut self, file: &str, table: &Table) -> Result<(), CliError> {
        table.write(&self.out.join(file))?;
        self.files.push(file.to_string());
        Ok(())
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    /// Writes `<name>.meta` and returns its path.
    pub fn finish(self, cfg: &RunConfig) -> Result<PathBuf, CliError> {
        let mut text = String::new();
        let _ = writeln!(text, "# mobimc run metadata; usable as --config input");
        let _ = writeln!(text, "version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "runtime_s = {:.3}", self.started.elapsed().as_secs_f64());
        let _ = writeln!(text, "runtime_budget_s = {}", self.budget_s);
        let _ = writeln!(text, "files = {}", self.files.join(","));
        for (k, v) in &self.notes {
            let _ = writeln!(text, "{k} = {v}");
        }
        text.push_str(&cfg.render());
        let path = self.out.join(format!("{}.meta", self.name));
        std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.log10(), hi.log10(), n).into_iter().map(|e| 10f64.powf(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_full_precision() {
        let x = 0.1 + 0.2;
        let text = Cell::Num(x).render();
        assert_eq!(text.parse::<f64>().unwrap(), x);
        assert_eq!(Cell::Num(f64::NEG_INFINITY).render(), "-inf");
        assert_eq!(Cell::Int(7).render(), "7");
    }

    #[test]
    fn grids() {
        assert_eq!(linspace(1.0, 3.0, 3), vec![1.0, 2.0, 3.0]);
        let g = logspace(1e-3, 1e-1, 3);
        assert!((g[1] - 1e-2).abs() < 1e-17);
    }
}
