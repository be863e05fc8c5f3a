//! Latin square files, one square per file.
//!
//! CSV: a header line `# order=N; poly=...` followed by one comma-separated row
//! per line. JSON: `{order, poly, construction, grid}` with `grid` a list of rows.
//! Entries are element codes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use permfield_core::mols::{LatinSquare, MolsSet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareFormat {
    Json,
    Csv,
}

impl SquareFormat {
    pub fn extension(self) -> &'static str {
        match self {
            SquareFormat::Json => "json",
            SquareFormat::Csv => "csv",
        }
    }

    fn of_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(SquareFormat::Json),
            "csv" => Some(SquareFormat::Csv),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFile {
    pub order: u32,
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    pub grid: Vec<Vec<u32>>,
}

pub fn square_to_csv(sq: &LatinSquare) -> String {
    let mut out = format!("# order={}; poly={}\n", sq.order(), sq.label());
    for row in sq.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn square_to_json(sq: &LatinSquare, construction: Option<&str>) -> String {
    let file = SquareFile {
        order: sq.order(),
        poly: sq.label().to_string(),
        construction: construction.map(str::to_string),
        grid: sq.rows().map(<[u32]>::to_vec).collect(),
    };
    serde_json::to_string(&file).expect("plain data serializes") + "\n"
}

pub fn square_from_csv(text: &str) -> anyhow::Result<LatinSquare> {
    let mut order = None;
    let mut label = String::new();
    let mut entries = Vec::new();
    let mut rows = 0u32;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(header) = line.strip_prefix('#') {
            for field in header.split(';') {
                match field.trim().split_once('=') {
                    Some(("order", v)) => order = Some(v.trim().parse::<u32>().context("bad order in header")?),
                    Some(("poly", v)) => label = v.trim().to_string(),
                    _ => {}
                }
            }
            continue;
        }
        for cell in line.split(',') {
            entries.push(cell.trim().parse::<u32>().with_context(|| format!("bad cell {cell:?}"))?);
        }
        rows += 1;
    }
    let order = order.unwrap_or(rows);
    if rows != order {
        bail!("expected {order} rows, found {rows}");
    }
    Ok(LatinSquare::from_entries(order, entries, label)?)
}

pub fn square_from_json(text: &str) -> anyhow::Result<LatinSquare> {
    let file: SquareFile = serde_json::from_str(text)?;
    if file.grid.len() != file.order as usize || file.grid.iter().any(|r| r.len() != file.order as usize) {
        bail!("grid is not {0}x{0}", file.order);
    }
    Ok(LatinSquare::from_entries(file.order, file.grid.concat(), file.poly)?)
}

pub fn read_square(path: &Path) -> anyhow::Result<LatinSquare> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = match SquareFormat::of_path(path) {
        Some(SquareFormat::Json) => square_from_json(&text),
        Some(SquareFormat::Csv) => square_from_csv(&text),
        None => bail!("{}: expected a .csv or .json file", path.display()),
    };
    parsed.with_context(|| format!("in {}", path.display()))
}

/// Expands directories into their `.csv` and `.json` files (sorted by name)
/// and reads every square.
pub fn read_squares(paths: &[PathBuf]) -> anyhow::Result<Vec<LatinSquare>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            inner.retain(|f| SquareFormat::of_path(f).is_some());
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    files.iter().map(|f| read_square(f)).collect()
}

/// Writes `square_001.<ext>`, `square_002.<ext>`, ... into `dir`.
pub fn write_set(set: &MolsSet, dir: &Path, format: SquareFormat) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let width = set.len().to_string().len().max(3);
    let mut written = Vec::with_capacity(set.len());
    for (i, sq) in set.squares().iter().enumerate() {
        let path = dir.join(format!("square_{:0width$}.{}", i + 1, format.extension()));
        let body = match format {
            SquareFormat::Csv => square_to_csv(sq),
            SquareFormat::Json => square_to_json(sq, Some(set.construction().tag())),
        };
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
