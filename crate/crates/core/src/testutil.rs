//! Shared fixtures for unit tests.

use crate::hypergroup::{Carrier, HyperOp, Hypergroup};
use crate::subset::ElemSet;

/// Builds a hypergroup from rows of space-separated cells, each cell a
/// comma-joined list of element names.
pub fn from_rows(names: &[&str], rows: &[&str]) -> Hypergroup {
    let n = names.len();
    let idx = |name: &str| -> usize {
        names
            .iter()
            .position(|&m| m == name)
            .unwrap_or_else(|| panic!("unknown name {name:?}"))
    };
    let mut cells = Vec::with_capacity(n * n);
    for row in rows {
        let row_cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(row_cells.len(), n, "row {row:?} has wrong length");
        for cell in row_cells {
            cells.push(cell.split(',').map(idx).collect::<ElemSet>());
        }
    }
    let carrier = Carrier::new(names.iter().map(|s| s.to_string()).collect()).unwrap();
    let op = HyperOp::new(n, cells).unwrap();
    Hypergroup::verify(carrier, op).expect("fixture table is a hypergroup")
}

/// The 8-element canonical hypergroup on {0, x, y, z, u, v, -x, -z} used
/// throughout the tests. Its fundamental relation collapses to Z_4.
pub fn ex37() -> Hypergroup {
    from_rows(
        &["0", "x", "y", "z", "u", "v", "-x", "-z"],
        &[
            "0 x y z u v -x -z",
            "x y,v z,-x u x,-z -x 0,u y",
            "y z,-x 0,u x y,v u x,-z -x",
            "z u x v -x -z y 0",
            "u x,-z y,v -x 0,u y z,-x x",
            "v -x u -z y 0 x z",
            "-x 0,u x,-z y z,-x x y,v u",
            "-z y -x 0 x z u v",
        ],
    )
}

/// Subset of a hypergroup from a comma-joined name list.
pub fn set(h: &Hypergroup, names: &str) -> ElemSet {
    let parts: Vec<&str> = names.split(',').collect();
    h.subset_from_names(&parts).unwrap()
}
