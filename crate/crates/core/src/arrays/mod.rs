//! Kotzig arrays and quasimagic rectangles.

mod kotzig;
mod qmr;

pub use kotzig::{kotzig_array, verify_kotzig};
pub use qmr::{qmr, qmr_seeded, verify_qmr, QmrReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrayKind {
    Kotzig,
    Qmr,
}

/// An `rows × cols` array with constant row sums and constant column sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicArray {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
    pub kind: ArrayKind,
    /// The missing value of a quasimagic rectangle.
    pub hole: Option<u64>,
    pub row_sum: u64,
    pub col_sum: u64,
}

impl MagicArray {
    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|row| row[j]).collect()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.column(j).iter().sum()).collect()
    }

    /// CSV with a leading comment line carrying the certified sums.
    pub fn to_csv(&self) -> String {
        let mut out = match self.hole {
            Some(d) => format!("# d={d} rho={} sigma={}\n", self.row_sum, self.col_sum),
            None => format!("# rho={} sigma={}\n", self.row_sum, self.col_sum),
        };
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Result of an existence-gated construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Built(MagicArray),
    /// The object provably does not exist; the string says why.
    NotExists(String),
}

impl Construction {
    pub fn built(self) -> Option<MagicArray> {
        match self {
            Construction::Built(a) => Some(a),
            Construction::NotExists(_) => None,
        }
    }
}
