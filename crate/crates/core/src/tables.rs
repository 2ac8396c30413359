//! Decision tables for distance magicness of the regular families, by
//! parity class of the parameters.

use std::fmt;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Dmg,
    NotDmg,
    NotYetSolved,
    /// No r-regular graph on b vertices exists (r and b both odd).
    NoSuchGraphs,
}

impl Cell {
    pub fn as_str(self) -> &'static str {
        match self {
            Cell::Dmg => "dmg",
            Cell::NotDmg => "not dmg",
            Cell::NotYetSolved => "not yet solved",
            Cell::NoSuchGraphs => "no such graphs",
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub id: u8,
    pub family: &'static str,
    pub rows: Vec<&'static str>,
    pub columns: Vec<&'static str>,
    pub cells: Vec<Vec<Cell>>,
}

use Cell::*;

/// `K(a,b)`.
pub fn table_k_ab() -> Table {
    Table {
        id: 1,
        family: "K(a,b)",
        rows: vec!["a even", "a odd"],
        columns: vec!["b even", "b odd"],
        cells: vec![vec![Dmg, Dmg], vec![NotDmg, Dmg]],
    }
}

/// `mK(a,b)`, `m > 1`.
pub fn table_mk_ab() -> Table {
    Table {
        id: 2,
        family: "mK(a,b), m > 1",
        rows: vec!["m odd, a even", "m odd, a odd", "m even, a even", "m even, a odd"],
        columns: vec!["b even", "b odd"],
        cells: vec![
            vec![Dmg, Dmg],
            vec![NotDmg, Dmg],
            vec![Dmg, Dmg],
            vec![NotDmg, NotDmg],
        ],
    }
}

/// `m(C_b ∘ K̄ₐ)`.
pub fn table_mc_lex() -> Table {
    Table {
        id: 3,
        family: "m(C_b∘K̄ₐ)",
        rows: vec!["m odd, a even", "m odd, a odd", "m even, a even", "m even, a odd"],
        columns: vec!["b ≡ 0 mod 4", "b ≡ 2 mod 4", "b odd"],
        cells: vec![
            vec![Dmg, Dmg, Dmg],
            vec![Dmg, NotDmg, Dmg],
            vec![Dmg, Dmg, Dmg],
            vec![Dmg, NotDmg, NotDmg],
        ],
    }
}

/// `G ∘ K̄ₐ` for an r-regular `G` on `b` vertices.
pub fn table_lex_regular() -> Table {
    Table {
        id: 4,
        family: "G∘K̄ₐ, G r-regular on b vertices",
        rows: vec![
            "r ≡ 0 mod 4, a odd",
            "r ≡ 2 mod 4, a odd",
            "r odd, a odd",
            "r even, a even",
            "r odd, a even",
        ],
        columns: vec!["b ≡ 0 mod 4", "b ≡ 2 mod 4", "b odd"],
        cells: vec![
            vec![NotYetSolved, NotYetSolved, Dmg],
            vec![NotYetSolved, NotDmg, Dmg],
            vec![NotDmg, NotDmg, NoSuchGraphs],
            vec![Dmg, Dmg, Dmg],
            vec![Dmg, Dmg, NoSuchGraphs],
        ],
    }
}

pub fn all_tables() -> Vec<Table> {
    vec![table_k_ab(), table_mk_ab(), table_mc_lex(), table_lex_regular()]
}

fn b_mod4_column(b: usize) -> usize {
    match b % 4 {
        0 => 0,
        2 => 1,
        _ => 2,
    }
}

fn m_a_row(m: usize, a: usize) -> usize {
    2 * (1 - m % 2) + a % 2
}

pub fn cell_k_ab(a: usize, b: usize) -> Cell {
    table_k_ab().cells[a % 2][b % 2]
}

pub fn cell_mk_ab(m: usize, a: usize, b: usize) -> Cell {
    table_mk_ab().cells[m_a_row(m, a)][b % 2]
}

pub fn cell_mc_lex(m: usize, a: usize, b: usize) -> Cell {
    table_mc_lex().cells[m_a_row(m, a)][b_mod4_column(b)]
}

pub fn cell_lex_regular(r: usize, a: usize, b: usize) -> Cell {
    let row = match (a % 2, r % 4) {
        (1, 0) => 0,
        (1, 2) => 1,
        (1, _) => 2,
        (_, 0 | 2) => 3,
        _ => 4,
    };
    table_lex_regular().cells[row][b_mod4_column(b)]
}

impl Table {
    pub fn to_json(&self) -> Value {
        let cells: Vec<Vec<&str>> = self
            .cells
            .iter()
            .map(|r| r.iter().map(|c| c.as_str()).collect())
            .collect();
        json!({
            "table": self.id,
            "family": self.family,
            "rows": self.rows,
            "columns": self.columns,
            "cells": cells,
        })
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Table {}: {}", self.id, self.family)?;
        let w = self.rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        let render = |label: &str, cells: Vec<&str>| {
            let mut line = format!("{label:w$}");
            for c in cells {
                line.push_str(&format!(" | {c:16}"));
            }
            line.trim_end().to_string()
        };
        writeln!(f, "{}", render("", self.columns.clone()))?;
        for (label, row) in self.rows.iter().zip(&self.cells) {
            writeln!(f, "{}", render(label, row.iter().map(|c| c.as_str()).collect()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        for t in all_tables() {
            assert_eq!(t.cells.len(), t.rows.len());
            assert!(t.cells.iter().all(|r| r.len() == t.columns.len()));
        }
    }

    #[test]
    fn lookups() {
        assert_eq!(cell_k_ab(3, 2), NotDmg);
        assert_eq!(cell_mk_ab(3, 3, 3), Dmg);
        assert_eq!(cell_mk_ab(2, 3, 3), NotDmg);
        assert_eq!(cell_mc_lex(1, 3, 4), Dmg);
        assert_eq!(cell_mc_lex(2, 3, 5), NotDmg);
        assert_eq!(cell_lex_regular(3, 3, 10), NotDmg);
        assert_eq!(cell_lex_regular(4, 3, 8), NotYetSolved);
        assert_eq!(cell_lex_regular(3, 2, 7), NoSuchGraphs);
    }
}
