use std::collections::HashSet;
use std::fs::File;
use std::io::ErrorKind;
use std::path::Path;

use kstat_core::{Dataset, IndexMultiset};

use crate::error::CliError;

/// A parsed CSV file: header names and the numeric body.
#[derive(Debug)]
pub struct Table {
    pub names: Vec<String>,
    pub data: Dataset,
}

/// Reads a comma-separated file whose first row is a header of unique names.
/// Blank lines are skipped; every other cell must be a finite number.
pub fn read_csv(path: &Path) -> Result<Table, CliError> {
    let file = File::open(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => CliError::Io(format!("{}: no such file", path.display())),
        _ => CliError::Io(format!("{}: {e}", path.display())),
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);

    let names: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Parse(format!("{}: unreadable header: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    if names.is_empty() || names.iter().all(String::is_empty) {
        return Err(CliError::Parse(format!(
            "{}: missing header row",
            path.display()
        )));
    }
    let mut seen = HashSet::new();
    for name in &names {
        if name.is_empty() {
            return Err(CliError::Parse(format!(
                "{}: empty column name in header",
                path.display()
            )));
        }
        if !seen.insert(name) {
            return Err(CliError::Parse(format!(
                "{}: duplicate column name '{name}'",
                path.display()
            )));
        }
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Parse(format!("{}: line {line}: {e}", path.display()))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .zip(&names)
            .map(|(cell, name)| match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Parse(format!(
                    "{}: line {line}, column '{name}': '{cell}' is not a finite number",
                    path.display()
                ))),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse(format!("{}: no data rows", path.display())));
    }
    let data = Dataset::from_rows(&rows)?.with_column_names(names.clone())?;
    Ok(Table { names, data })
}

/// Resolves `x,x,y` (names, or 1-based positions when no name matches) into
/// an index multiset, keeping the labels as written.
pub fn resolve_order(
    spec: &str,
    names: &[String],
) -> Result<(IndexMultiset, Vec<String>), CliError> {
    let mut indices = Vec::new();
    let mut labels = Vec::new();
    for token in spec.split(',').map(str::trim) {
        if token.is_empty() {
            return Err(CliError::Usage(format!(
                "empty column in order spec '{spec}'"
            )));
        }
        let position = match names.iter().position(|n| n == token) {
            Some(p) => p + 1,
            None => match token.parse::<usize>() {
                Ok(p) if (1..=names.len()).contains(&p) => p,
                _ => return Err(CliError::UnknownColumn(token.to_string())),
            },
        };
        indices.push(position);
        labels.push(names[position - 1].clone());
    }
    Ok((IndexMultiset::new(indices)?, labels))
}
