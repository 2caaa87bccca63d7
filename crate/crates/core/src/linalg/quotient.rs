use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Incrementally built echelon basis of sparse vectors. Each stored row is
/// keyed by its largest nonzero index and scaled so that entry equals one.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        self.rows.contains_key(&index)
    }

    /// Reduces `v` modulo the span. The result is zero on every pivot index
    /// and depends only on the coset of `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut upper: Option<usize> = None;
        loop {
            let next = match upper {
                None => v.iter().next_back(),
                Some(b) => v.range(..b).next_back(),
            };
            let Some((&c, coef)) = next else { break };
            if let Some(row) = self.rows.get(&c) {
                let f = coef.clone();
                for (k, x) in row {
                    let entry = v.entry(*k).or_insert_with(Scalar::zero);
                    *entry -= &f * x;
                    if entry.is_zero() {
                        v.remove(k);
                    }
                }
            }
            upper = Some(c);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next_back() else {
            return false;
        };
        let inv = Scalar::one() / lead;
        let row = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `Q^n / span(relations)` with coset representatives given by the
/// lexicographically first standard basis vectors independent modulo the
/// relations.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    ambient_dim: usize,
    echelon: SparseEchelon,
    representatives: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut echelon = SparseEchelon::new();
        for r in relations {
            debug_assert!(r.keys().all(|&k| k < ambient_dim));
            echelon.insert(r);
        }
        Self::from_echelon(ambient_dim, echelon)
    }

    pub fn from_echelon(ambient_dim: usize, echelon: SparseEchelon) -> Self {
        let representatives: Vec<usize> =
            (0..ambient_dim).filter(|&i| !echelon.is_pivot(i)).collect();
        let position = representatives.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        Self {
            ambient_dim,
            echelon,
            representatives,
            position,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Ambient indices of the standard basis vectors chosen as coset
    /// representatives.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn echelon(&self) -> &SparseEchelon {
        &self.echelon
    }

    pub fn project_sparse(&self, v: SparseVec) -> Vec<Scalar> {
        let r = self.echelon.reduce(v);
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, x) in r {
            out[self.position[&k]] = x;
        }
        out
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        self.project_sparse(to_sparse(v))
    }

    /// The quotient vector `q` lifted to the ambient space through the
    /// chosen representatives.
    pub fn section(&self, q: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(q.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (x, &i) in q.iter().zip(&self.representatives) {
            out[i] = x.clone();
        }
        out
    }

    /// Matrix of the projection, `dim × ambient_dim`.
    pub fn project_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.ambient_dim)
            .map(|i| self.project_sparse(SparseVec::from([(i, Scalar::one())])))
            .collect();
        Matrix::from_columns(&cols, self.dim())
    }

    /// Matrix of the section, `ambient_dim × dim`.
    pub fn section_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient_dim, self.dim());
        for (p, &i) in self.representatives.iter().enumerate() {
            m[(i, p)] = Scalar::one();
        }
        m
    }

    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.echelon.contains(to_sparse(v))
    }
}

/// Quotient of `Q^n` by dense relation vectors.
pub fn quotient_space(ambient_dim: usize, relations: &[Vec<Scalar>]) -> QuotientSpace {
    QuotientSpace::new(ambient_dim, relations.iter().map(|r| {
        assert_eq!(r.len(), ambient_dim, "relation length mismatch");
        to_sparse(r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn no_relations_is_identity() {
        let q = quotient_space(2, &[]);
        assert_eq!(q.dim(), 2);
        assert!(q.project_matrix().is_identity());
    }

    #[test]
    fn single_relation() {
        let q = quotient_space(2, &[v(&[1, 0])]);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&v(&[1, 0])), v(&[0]));
    }

    #[test]
    fn chain_of_relations() {
        let rels = [v(&[1, 1, 0]), v(&[0, 1, 1])];
        let q = quotient_space(3, &rels);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.representatives(), &[0]);
        for r in &rels {
            assert_eq!(q.project(r), v(&[0]));
        }
        // e3 = e1 modulo the relations
        assert_eq!(q.project(&v(&[0, 0, 1])), v(&[1]));
        assert_eq!(q.project(&v(&[0, 1, 0])), v(&[-1]));
        assert_eq!(q.project(&q.section(&v(&[5]))), v(&[5]));
    }

    #[test]
    fn reduction_is_coset_invariant() {
        let mut e = SparseEchelon::new();
        e.insert(to_sparse(&v(&[1, 2, 3])));
        e.insert(to_sparse(&v(&[0, 1, 1])));
        let a = e.reduce(to_sparse(&v(&[4, 4, 4])));
        let b = e.reduce(to_sparse(&v(&[5, 7, 8])));
        assert_eq!(a, b);
    }
}
