//! Built-in relative-error tables for the three expansions and the logic to
//! recompute them against the quadrature oracle.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::reference::{oracle_quadrature, OracleConfig};
use crate::{eval_large_x, eval_large_xy, eval_small_x};

/// Which expansion a table exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    SmallX,
    LargeX,
    LargeXY,
}

impl TableId {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(TableId::SmallX),
            2 => Ok(TableId::LargeX),
            3 => Ok(TableId::LargeXY),
            _ => Err(Error::Domain(format!("table must be 1, 2 or 3, got {n}"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            TableId::SmallX => 1,
            TableId::LargeX => 2,
            TableId::LargeXY => 3,
        }
    }

    pub fn points(self) -> &'static [TablePoint] {
        match self {
            TableId::SmallX => &TABLE_SMALL_X,
            TableId::LargeX => &TABLE_LARGE_X,
            TableId::LargeXY => &TABLE_LARGE_XY,
        }
    }

    /// Value of the expansion with `terms` summands.
    pub fn approximate(self, x: Complex64, y: Complex64, terms: usize) -> Result<Complex64> {
        let r = match self {
            TableId::SmallX => eval_small_x(x, y, terms)?,
            TableId::LargeX => eval_large_x(x, y, terms)?,
            TableId::LargeXY => eval_large_xy(x, y, terms)?,
        };
        Ok(r.value)
    }
}

/// One row: the point and the published relative errors for `n = 0..5`
/// (column `n` uses `n + 1` terms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TablePoint {
    pub label: &'static str,
    pub x: Complex64,
    pub y: Complex64,
    pub printed: [f64; 6],
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const R2: f64 = 0.707_106_781_186_547_52;

pub static TABLE_SMALL_X: [TablePoint; 5] = [
    TablePoint {
        label: "(1, i)",
        x: c(1.0, 0.0),
        y: c(0.0, 1.0),
        printed: [0.392107, 0.1672, 0.063132, 0.021281, 0.006514, 0.001836],
    },
    TablePoint {
        label: "(e^{iπ/4}, 1)",
        x: c(R2, R2),
        y: c(1.0, 0.0),
        printed: [0.257819, 0.079558, 0.022810, 0.005967, 0.001428, 0.000314],
    },
    TablePoint {
        label: "(-1/5, i)",
        x: c(-0.2, 0.0),
        y: c(0.0, 1.0),
        printed: [0.080452, 0.006563, 0.000477, 0.000031, 1.868e-6, 1.033e-7],
    },
    TablePoint {
        label: "(1/10 - i/8, -2)",
        x: c(0.1, -0.125),
        y: c(-2.0, 0.0),
        printed: [0.004970, 0.002162, 0.000182, 0.000011, 5.876e-7, 2.719e-8],
    },
    TablePoint {
        label: "(i/20, 2i)",
        x: c(0.0, 0.05),
        y: c(0.0, 2.0),
        printed: [0.027790, 0.000675, 0.000013, 2.501e-7, 4.042e-9, 5.976e-11],
    },
];

pub static TABLE_LARGE_X: [TablePoint; 6] = [
    TablePoint {
        label: "(5, 2i)",
        x: c(5.0, 0.0),
        y: c(0.0, 2.0),
        printed: [0.04689, 0.011308, 0.004835, 0.002943, 0.002317, 0.002233],
    },
    TablePoint {
        label: "(10e^{iπ/4}, -1)",
        x: c(7.071_067_811_865_475_2, 7.071_067_811_865_475_2),
        y: c(-1.0, 0.0),
        printed: [0.006956, 0.000281, 0.000021, 2.441e-6, 3.675e-7, 6.934e-8],
    },
    TablePoint {
        label: "(5 + 10i, 1 - i)",
        x: c(5.0, 10.0),
        y: c(1.0, -1.0),
        printed: [0.007110, 0.000291, 0.000022, 2.505e-6, 3.690e-7, 6.722e-8],
    },
    TablePoint {
        label: "(20, 1)",
        x: c(20.0, 0.0),
        y: c(1.0, 0.0),
        printed: [0.001766, 0.000018, 3.514e-7, 1.002e-8, 3.772e-10, 1.846e-11],
    },
    TablePoint {
        label: "(30i, -i)",
        x: c(0.0, 30.0),
        y: c(0.0, -1.0),
        printed: [0.000837, 4.092e-6, 3.775e-8, 5.147e-10, 9.215e-12, 3.221e-13],
    },
    TablePoint {
        label: "(100i, 2 - i)",
        x: c(0.0, 100.0),
        y: c(2.0, -1.0),
        printed: [0.000078, 3.553e-8, 3.048e-11, 3.885e-14, 1.550e-16, 1.150e-16],
    },
];

pub static TABLE_LARGE_XY: [TablePoint; 5] = [
    TablePoint {
        label: "(10, 3i)",
        x: c(10.0, 0.0),
        y: c(0.0, 3.0),
        printed: [0.007738, 0.007732, 0.000532, 0.000353, 0.000071, 0.000031],
    },
    TablePoint {
        label: "(20e^{5iπ/8}, 10)",
        x: c(-7.653_668_647_301_795_4, 18.477_590_650_225_735),
        y: c(10.0, 0.0),
        printed: [0.002036, 0.002008, 0.000139, 0.000027, 5.602e-6, 7.790e-7],
    },
    TablePoint {
        label: "(50i, 20e^{iπ/4})",
        x: c(0.0, 50.0),
        y: c(14.142_135_623_730_950, 14.142_135_623_730_950),
        printed: [0.000295, 0.000185, 4.224e-6, 5.134e-7, 2.801e-8, 1.784e-9],
    },
    TablePoint {
        label: "(100, 20i)",
        x: c(100.0, 0.0),
        y: c(0.0, 20.0),
        printed: [0.000074, 0.000073, 1.820e-7, 3.237e-8, 2.616e-10, 2.618e-11],
    },
    TablePoint {
        label: "(200i, 5)",
        x: c(0.0, 200.0),
        y: c(5.0, 0.0),
        printed: [0.000018, 0.000017, 2.062e-9, 2.051e-9, 4.274e-13, 4.228e-13],
    },
];

/// Ratio allowed between computed and printed entries.
pub const RATIO_TOLERANCE: f64 = 1.02;
/// Entries below this are checked one-sidedly.
pub const SMALL_ENTRY: f64 = 1e-10;
/// Multiple of the printed value allowed for small entries.
pub const SMALL_ENTRY_FACTOR: f64 = 3.0;
/// Ceiling for entries printed at the double-precision noise floor.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Acceptance rule for a single cell.
pub fn cell_passes(table: TableId, point: &TablePoint, n: usize, computed: f64) -> bool {
    let printed = point.printed[n];
    if !computed.is_finite() {
        return false;
    }
    if table == TableId::LargeX && point.label == "(100i, 2 - i)" && n >= 4 {
        return computed <= NOISE_FLOOR;
    }
    if printed >= SMALL_ENTRY {
        let ratio = computed / printed;
        ratio <= RATIO_TOLERANCE && ratio >= 1.0 / RATIO_TOLERANCE
    } else {
        computed <= SMALL_ENTRY_FACTOR * printed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub n: usize,
    pub computed: f64,
    pub printed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowResult {
    pub point: TablePoint,
    pub reference: Complex64,
    pub cells: Vec<CellResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub table: TableId,
    pub digits: u32,
    pub rows: Vec<RowResult>,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(|c| c.pass))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&TablePoint, &CellResult)> {
        self.rows
            .iter()
            .flat_map(|r| r.cells.iter().filter(|c| !c.pass).map(move |c| (&r.point, c)))
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {} (oracle {} digits), computed / printed", self.table.number(), self.digits)?;
        for row in &self.rows {
            write!(f, "{:<22}", row.point.label)?;
            for c in &row.cells {
                write!(
                    f,
                    " {:>11.4e}/{:<10.4e}{}",
                    c.computed,
                    c.printed,
                    if c.pass { " PASS" } else { " FAIL" }
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Recomputes one row: one oracle call, six expansions.
pub fn reproduce_row(table: TableId, point: &TablePoint, cfg: &OracleConfig) -> Result<RowResult> {
    let oracle = oracle_quadrature(point.x, point.y, cfg)?;
    let reference = oracle.to_complex64()?;
    let cells = (0..6)
        .map(|n| {
            let computed = table
                .approximate(point.x, point.y, n + 1)
                .map_or(f64::INFINITY, |v| oracle.relative_error(v));
            CellResult {
                n,
                computed,
                printed: point.printed[n],
                pass: cell_passes(table, point, n, computed),
            }
        })
        .collect();
    Ok(RowResult {
        point: *point,
        reference,
        cells,
    })
}

pub fn reproduce_table(table: TableId, cfg: &OracleConfig) -> Result<TableReport> {
    let rows = table
        .points()
        .iter()
        .map(|p| reproduce_row(table, p, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport {
        table,
        digits: cfg.digits,
        rows,
    })
}
