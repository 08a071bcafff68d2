use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::abelian::FgAbGroup;
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Integer cochain complex of a finite CW complex.
///
/// `delta[k]` is the coboundary `C^k → C^{k+1}`, a matrix with one row per (k+1)-cell and one
/// column per k-cell, acting on cochains written as column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    cells: Vec<Vec<String>>,
    delta: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(cells: Vec<Vec<String>>, delta: Vec<IntMatrix>) -> Result<Self> {
        assert!(!cells.is_empty(), "a complex has at least degree 0");
        assert_eq!(delta.len() + 1, cells.len(), "one coboundary per degree below the top");
        for (k, d) in delta.iter().enumerate() {
            assert_eq!(d.shape(), (cells[k + 1].len(), cells[k].len()), "shape of δ_{k}");
        }
        for k in 1..delta.len() {
            if !delta[k].mul(&delta[k - 1]).is_zero() {
                return Err(Error::NotWellDefined(format!("δ_{k} ∘ δ_{} ≠ 0", k - 1)));
            }
        }
        Ok(CochainComplex { cells, delta })
    }

    pub fn empty(dim: usize) -> Self {
        let cells = vec![Vec::new(); dim + 1];
        let delta = (0..dim).map(|_| IntMatrix::zeros(0, 0)).collect();
        CochainComplex { cells, delta }
    }

    /// One vertex, one edge.
    pub fn circle() -> Self {
        Self::new(vec![vec!["v".into()], vec!["e".into()]], vec![IntMatrix::zeros(1, 1)]).unwrap()
    }

    /// One vertex, two edges, one face.
    pub fn torus() -> Self {
        Self::new(
            vec![vec!["v".into()], vec!["a".into(), "b".into()], vec!["f".into()]],
            vec![IntMatrix::zeros(2, 1), IntMatrix::zeros(1, 2)],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn ncells(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, k: usize) -> &[String] {
        &self.cells[k]
    }

    /// `δ_k`, with the zero map past the top degree.
    pub fn delta(&self, k: usize) -> IntMatrix {
        match self.delta.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(0, self.ncells(k)),
        }
    }

    /// `δ_{k-1}`, with the zero map into degree 0.
    pub fn delta_into(&self, k: usize) -> IntMatrix {
        if k == 0 {
            IntMatrix::zeros(self.ncells(0), 0)
        } else {
            self.delta(k - 1)
        }
    }

    pub fn cohomology(&self, k: usize) -> FgAbGroup {
        FgAbGroup::subquotient(&self.delta(k), &self.delta_into(k)).expect("δ∘δ = 0 was checked")
    }

    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for k in 0..=self.dim() {
            out.push_str(&format!("C^{k}: {} cells\n", self.ncells(k)));
            for (i, c) in self.cells[k].iter().enumerate() {
                out.push_str(&format!("  {i}: {c}\n"));
            }
        }
        for (k, d) in self.delta.iter().enumerate() {
            out.push_str(&format!("delta_{k}: {}x{}\n", d.rows(), d.cols()));
            for i in 0..d.rows() {
                let row: Vec<String> = d.row(i).iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("  {}\n", row.join(" ")));
            }
        }
        out
    }

    pub fn dump_json(&self) -> Value {
        let mats: Vec<Value> = self
            .delta
            .iter()
            .map(|d| {
                let rows: Vec<Value> = (0..d.rows())
                    .map(|i| {
                        let row = d.row(i).iter();
                        Value::from(
                            row.map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect();
                json!({"rows": d.rows(), "cols": d.cols(), "entries": rows})
            })
            .collect();
        json!({"dimension": self.dim(), "cells": self.cells, "delta": mats})
    }
}

/// `ker δ_k / im δ_{k-1}` with generator witnesses.
pub fn cohomology(c: &CochainComplex, k: usize) -> FgAbGroup {
    c.cohomology(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_torus() {
        let c = CochainComplex::circle();
        assert_eq!(c.cohomology(0).to_string(), "Z");
        assert_eq!(c.cohomology(1).to_string(), "Z");
        let t = CochainComplex::torus();
        let h: Vec<String> = (0..3).map(|k| t.cohomology(k).to_string()).collect();
        assert_eq!(h, ["Z", "Z^2", "Z"]);
    }

    #[test]
    fn projective_plane() {
        // RP²: one vertex, one edge a, one face with boundary a·a.
        let c = CochainComplex::new(
            vec![vec!["v".into()], vec!["a".into()], vec!["f".into()]],
            vec![IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[[2]])],
        )
        .unwrap();
        let h: Vec<String> = (0..3).map(|k| c.cohomology(k).to_string()).collect();
        assert_eq!(h, ["Z", "0", "Z_2"]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let r = CochainComplex::new(
            vec![vec!["v".into()], vec!["a".into()], vec!["f".into()]],
            vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn empty_complex_has_zero_groups() {
        let c = CochainComplex::empty(2);
        assert!((0..3).all(|k| c.cohomology(k).is_trivial()));
    }
}
