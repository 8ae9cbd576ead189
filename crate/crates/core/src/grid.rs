//! Cartesian (d, k, h) sweeps evaluated cell by cell.

use crate::exec::{map_slice, Execution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub d: f64,
    pub k: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub ds: Vec<f64>,
    pub ks: Vec<usize>,
    pub hs: Vec<usize>,
}

impl SweepGrid {
    pub fn new(ds: Vec<f64>, ks: Vec<usize>, hs: Vec<usize>) -> Self {
        SweepGrid { ds, ks, hs }
    }

    /// Cells in lexicographic (d, k, h) order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut ds = self.ds.clone();
        ds.sort_by(f64::total_cmp);
        ds.dedup();
        let mut ks = self.ks.clone();
        ks.sort_unstable();
        ks.dedup();
        let mut hs = self.hs.clone();
        hs.sort_unstable();
        hs.dedup();
        let mut out = Vec::with_capacity(ds.len() * ks.len() * hs.len());
        for &d in &ds {
            for &k in &ks {
                for &h in &hs {
                    out.push(Cell { d, k, h });
                }
            }
        }
        out
    }

    /// Evaluates `f` on every cell; results come back in cell order.
    pub fn run<R, F>(&self, exec: Execution, f: F) -> Vec<(Cell, R)>
    where
        R: Send,
        F: Fn(&Cell) -> R + Sync + Send,
    {
        let cells = self.cells();
        let results = map_slice(exec, &cells, f);
        cells.into_iter().zip(results).collect()
    }
}
