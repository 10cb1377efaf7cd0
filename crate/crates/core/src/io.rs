//! File formats: Cayley tables (JSON and whitespace text), universe
//! manifests, middle-linear tables and relation block lists. Printing is
//! canonical, so print -> parse -> print is byte-stable.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::{RelationKind, Universe};
use crate::hypergroup::{Carrier, HyperOp, Hypergroup};
use crate::modtensor::{MiddleLinearTable, MlKind};
use crate::quotients::FgAbGroup;
use crate::relations::EquivRelation;
use crate::subset::ElemSet;

#[derive(Serialize, Deserialize)]
struct CayleyFile {
    elements: Vec<String>,
    table: Vec<Vec<Vec<String>>>,
}

fn verify_parsed(names: Vec<String>, n: usize, cells: Vec<ElemSet>) -> Result<Hypergroup> {
    let carrier = Carrier::new(names)?;
    let op = HyperOp::new(n, cells)?;
    Hypergroup::verify(carrier, op).map_err(|f| Error::Axioms(f.to_string()))
}

/// Parses the JSON Cayley format
/// {"elements":[...],"table":[[["0"],["x","y"],...],...]}.
pub fn parse_json(text: &str) -> Result<Hypergroup> {
    let file: CayleyFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = file.elements.len();
    if file.table.len() != n || file.table.iter().any(|row| row.len() != n) {
        return Err(Error::Parse(format!("table is not {n}x{n}")));
    }
    let index = |name: &str| -> Result<usize> {
        file.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Parse(format!("unknown element {name:?} in table")))
    };
    let mut cells = Vec::with_capacity(n * n);
    for row in &file.table {
        for cell in row {
            cells.push(cell.iter().map(|e| index(e)).collect::<Result<ElemSet>>()?);
        }
    }
    verify_parsed(file.elements, n, cells)
}

/// Prints the JSON Cayley format with cells in carrier order.
pub fn to_json(h: &Hypergroup) -> String {
    let n = h.size();
    let file = CayleyFile {
        elements: h.carrier().names().to_vec(),
        table: (0..n)
            .map(|a| (0..n).map(|b| h.subset_names(h.cell(a, b))).collect())
            .collect(),
    };
    let mut out = serde_json::to_string(&file).expect("cayley table serializes");
    out.push('\n');
    out
}

/// Parses the whitespace text format: first non-comment line lists the
/// element names; each following line is one table row of n cells, each
/// cell a comma-joined list of element names. Lines starting with '#' are
/// comments.
pub fn parse_text(text: &str) -> Result<Hypergroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table file".into()))?;
    let names: Vec<String> = header.split_whitespace().map(str::to_string).collect();
    let n = names.len();
    let index = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Parse(format!("unknown element {name:?} in table")))
    };
    let mut cells = Vec::with_capacity(n * n);
    for (i, line) in lines.enumerate() {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != n {
            return Err(Error::Parse(format!("row {i} has {} cells, want {n}", row.len())));
        }
        for cell in row {
            cells.push(cell.split(',').map(index).collect::<Result<ElemSet>>()?);
        }
    }
    if cells.len() != n * n {
        return Err(Error::Parse(format!(
            "table has {} rows, want {n}",
            cells.len() / n.max(1)
        )));
    }
    verify_parsed(names, n, cells)
}

/// Prints the whitespace text format. Fails if any element name contains
/// a character the format cannot carry (whitespace or comma); such tables
/// must use JSON.
pub fn to_text(h: &Hypergroup) -> Result<String> {
    let names = h.carrier().names();
    if names
        .iter()
        .any(|n| n.contains(char::is_whitespace) || n.contains(','))
    {
        return Err(Error::Parse(
            "element names contain separators; use the JSON format".into(),
        ));
    }
    let n = h.size();
    let mut out = names.join(" ");
    out.push('\n');
    for a in 0..n {
        let row: Vec<String> = (0..n)
            .map(|b| h.subset_names(h.cell(a, b)).join(","))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Parses either format, keyed on the leading character.
pub fn parse_auto(text: &str) -> Result<Hypergroup> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Loads a Cayley-table file in either format.
pub fn load_hypergroup(path: impl AsRef<Path>) -> Result<Hypergroup> {
    parse_auto(&read(path.as_ref())?)
}

/// One universe member: a table file plus optional symbolic data — a
/// theta descriptor ("Z_4", "Z^2 x Z_3") and a relation recipe name
/// ("beta", "mod:0,u").
#[derive(Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct Manifest {
    pub members: Vec<ManifestEntry>,
}

/// A manifest resolved against the filesystem.
pub struct LoadedUniverse {
    pub universe: Universe,
    pub thetas: Vec<Option<FgAbGroup>>,
    pub rels: Vec<Option<RelationKind>>,
}

/// Loads a universe manifest (JSON); member paths are resolved relative
/// to the manifest's directory. `alpha_cap` applies to any "alpha"
/// relation entries.
pub fn load_manifest(path: impl AsRef<Path>, alpha_cap: usize) -> Result<LoadedUniverse> {
    let path = path.as_ref();
    let manifest: Manifest =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut entries = Vec::new();
    let mut thetas = Vec::new();
    let mut rels = Vec::new();
    for m in &manifest.members {
        entries.push((m.name.clone(), load_hypergroup(base.join(&m.path))?));
        thetas.push(m.theta.as_deref().map(str::parse).transpose()?);
        rels.push(
            m.rel
                .as_deref()
                .map(|r| RelationKind::parse(r, alpha_cap))
                .transpose()?,
        );
    }
    Ok(LoadedUniverse {
        universe: Universe::new(entries)?,
        thetas,
        rels,
    })
}

#[derive(Serialize, Deserialize)]
struct MiddleLinearFile {
    #[serde(rename = "H")]
    h: String,
    #[serde(rename = "K")]
    k: String,
    #[serde(rename = "C")]
    c: String,
    values: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    bilinear: bool,
}

/// Loads a middle-linear table {"H":path,"K":path,"C":path,"values":...};
/// values[i][j] lists element names of f(h_i, k_j). Table paths resolve
/// relative to the JSON file.
pub fn load_middle_linear(path: impl AsRef<Path>) -> Result<MiddleLinearTable> {
    let path = path.as_ref();
    let file: MiddleLinearFile =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let h = load_hypergroup(base.join(&file.h))?;
    let k = load_hypergroup(base.join(&file.k))?;
    let c = load_hypergroup(base.join(&file.c))?;
    if file.values.len() != h.size() || file.values.iter().any(|r| r.len() != k.size()) {
        return Err(Error::Parse("values grid does not match H x K".into()));
    }
    let mut values = Vec::with_capacity(h.size() * k.size());
    for row in &file.values {
        for cell in row {
            let refs: Vec<&str> = cell.iter().map(String::as_str).collect();
            values.push(c.subset_from_names(&refs)?);
        }
    }
    let kind = if file.bilinear {
        MlKind::Bilinear
    } else {
        MlKind::MiddleLinear
    };
    MiddleLinearTable::new(h, k, c, values, kind)
}

/// Relation blocks as a JSON array of name arrays, in canonical block
/// order, e.g. [["0","u"],["x","-z"],["y","v"],["z","-x"]].
pub fn blocks_json(h: &Hypergroup, rel: &EquivRelation) -> String {
    let blocks: Vec<Vec<String>> = rel
        .blocks()
        .iter()
        .map(|b| h.subset_names(*b))
        .collect();
    serde_json::to_string(&blocks).expect("block list serializes")
}
