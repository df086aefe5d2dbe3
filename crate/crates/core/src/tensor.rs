//! Dense matrices over [`Ratio`] with tensor-leg bookkeeping on V^(⊗k).
//!
//! Multi-indices (i_1, ..., i_k) flatten big-endian: leg 1 is the most
//! significant digit. The convention is fixed here once and asserted in tests;
//! everything downstream (Kronecker products, leg embeddings, the conjugation
//! operator on End(V⊗V)) relies on it.

use serde::Serialize;

use crate::error::CoreError;
use crate::ring::{ParamSpace, Ratio, Scalar};
use crate::Result;

/// A square matrix over `Ratio` acting on `k` tensor legs of dimension `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    space: ParamSpace,
    legs: usize,
    dim_per_leg: usize,
    size: usize,
    entries: Vec<Ratio>, // row-major, size * size
}

impl Mat {
    pub fn zero(space: ParamSpace, legs: usize, dim_per_leg: usize) -> Self {
        let size = dim_per_leg.pow(legs as u32);
        Mat {
            space,
            legs,
            dim_per_leg,
            size,
            entries: vec![Ratio::zero(space); size * size],
        }
    }

    pub fn identity(space: ParamSpace, legs: usize, dim_per_leg: usize) -> Self {
        let mut m = Self::zero(space, legs, dim_per_leg);
        for i in 0..m.size {
            m.entries[i * m.size + i] = Ratio::one(space);
        }
        m
    }

    /// Matrix unit `M_i^j` on one leg: 1 in row `i`, column `j` (1-based).
    pub fn unit(space: ParamSpace, dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(space, 1, dim);
        m.set(i - 1, j - 1, Ratio::one(space));
        m
    }

    pub fn space(&self) -> ParamSpace {
        self.space
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim_per_leg(&self) -> usize {
        self.dim_per_leg
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Ratio {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Ratio) {
        self.entries[row * self.size + col] = v;
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: &Ratio) {
        let e = &mut self.entries[row * self.size + col];
        *e = e.add(v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn num_nonzero(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.size, other.size);
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.size, other.size);
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.sub(o);
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg();
        }
        out
    }

    pub fn scale(&self, c: &Ratio) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.mul(c);
        }
        out
    }

    /// Matrix product, skipping zero entries of `self` (the matrices here are
    /// sparse in practice even though the storage is dense).
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.size, other.size, "size mismatch in matrix product");
        let n = self.size;
        let mut out = Mat::zero(self.space, self.legs, self.dim_per_leg);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    out.add_to(i, j, &prod);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.space, self.legs, self.dim_per_leg);
        for i in 0..self.size {
            for j in 0..self.size {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Mat::identity(self.space, self.legs, self.dim_per_leg);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(CoreError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    a.set(pivot, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot, j).clone();
                    inv.set(pivot, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&pinv));
                inv.set(col, j, inv.get(col, j).mul(&pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let av = a.get(col, j).mul(&factor);
                    a.set(r, j, a.get(r, j).sub(&av));
                    let iv = inv.get(col, j).mul(&factor);
                    inv.set(r, j, inv.get(r, j).sub(&iv));
                }
            }
        }
        Ok(inv)
    }

    /// Kronecker product; legs concatenate, big-endian flattening.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        if self.dim_per_leg != other.dim_per_leg {
            return Err(CoreError::LegMismatch(format!(
                "kron of per-leg dimensions {} and {}",
                self.dim_per_leg, other.dim_per_leg
            )));
        }
        let mut out = Mat::zero(self.space, self.legs + other.legs, self.dim_per_leg);
        let (sa, sb) = (self.size, other.size);
        for i1 in 0..sa {
            for j1 in 0..sa {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..sb {
                    for j2 in 0..sb {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * sb + i2, j1 * sb + j2, a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Embed a 2-leg operator into legs `(p, q)` of `total_legs` (1-based,
    /// `p < q`), acting as the identity elsewhere.
    pub fn embed(&self, p: usize, q: usize, total_legs: usize) -> Result<Mat> {
        if self.legs != 2 {
            return Err(CoreError::LegMismatch(
                "embed expects a 2-leg operator".into(),
            ));
        }
        if !(1 <= p && p < q && q <= total_legs) {
            return Err(CoreError::LegMismatch(format!(
                "embed positions ({p},{q}) out of range for {total_legs} legs"
            )));
        }
        let n = self.dim_per_leg;
        let mut out = Mat::zero(self.space, total_legs, n);
        let total = n.pow(total_legs as u32);
        // iterate rows; for each row multi-index and each nonzero R-entry
        // acting on digits (p,q), produce the column multi-index.
        let mut row_digits = vec![0usize; total_legs];
        for row in 0..total {
            let mut r = row;
            for d in (0..total_legs).rev() {
                row_digits[d] = r % n;
                r /= n;
            }
            let rp = row_digits[p - 1];
            let rq = row_digits[q - 1];
            let rrow = rp * n + rq;
            for cp in 0..n {
                for cq in 0..n {
                    let v = self.get(rrow, cp * n + cq);
                    if v.is_zero() {
                        continue;
                    }
                    let mut col = 0usize;
                    for (d, &dig) in row_digits.iter().enumerate() {
                        let digit = if d == p - 1 {
                            cp
                        } else if d == q - 1 {
                            cq
                        } else {
                            dig
                        };
                        col = col * n + digit;
                    }
                    out.add_to(row, col, v);
                }
            }
        }
        Ok(out)
    }

    /// `prod_r (M - r * I)` over the given roots.
    pub fn mat_poly(&self, roots: &[Ratio]) -> Mat {
        let id = Mat::identity(self.space, self.legs, self.dim_per_leg);
        let mut out = id.clone();
        for r in roots {
            let factor = self.sub(&id.scale(r));
            out = out.mul(&factor);
        }
        out
    }

    /// Map every entry (e.g. parameter substitution or specialization).
    pub fn map_entries<E>(&self, mut f: impl FnMut(&Ratio) -> std::result::Result<Ratio, E>) -> std::result::Result<Mat, E> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = f(e)?;
        }
        Ok(out)
    }

    /// JSON dump: array-of-arrays of canonical entry strings plus metadata.
    pub fn dump_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump {
            n: usize,
            legs: usize,
            convention: &'static str,
            entries: Vec<Vec<String>>,
        }
        let entries = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.get(i, j).to_string())
                    .collect()
            })
            .collect();
        serde_json::to_value(Dump {
            n: self.dim_per_leg,
            legs: self.legs,
            convention: "big-endian",
            entries,
        })
        .expect("matrix dump serializes")
    }

    /// Largest count of numerator terms over all entries; a cheap size
    /// summary for reports on nonzero residuals.
    pub fn max_entry_terms(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.num().num_terms())
            .max()
            .unwrap_or(0)
    }
}

/// Evaluate every entry at a rational assignment (spot checks).
pub fn eval_mat(m: &Mat, assignment: &crate::ring::Assignment) -> Result<Vec<Vec<num_rational::BigRational>>> {
    let n = m.size();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(m.get(i, j).eval_rational(assignment)?);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> ParamSpace {
        ParamSpace::new(2)
    }

    #[test]
    fn kron_identity_and_units() {
        let s = sp();
        let i2 = Mat::identity(s, 1, 2);
        let i4 = i2.kron(&i2).unwrap();
        assert_eq!(i4, Mat::identity(s, 2, 2));

        // M_1^1 (x) M_2^2 has its single entry at row (1,2), col (1,2)
        let m11 = Mat::unit(s, 2, 1, 1);
        let m22 = Mat::unit(s, 2, 2, 2);
        let k = m11.kron(&m22).unwrap();
        assert_eq!(k.num_nonzero(), 1);
        assert!(k.get(0 * 2 + 1, 0 * 2 + 1).is_one());
    }

    #[test]
    fn kron_mixed_product() {
        let s = sp();
        let q = Scalar::q(s, 1, 2);
        let a = Scalar::a(s);
        let mk = |entries: [[Scalar; 2]; 2]| {
            let mut m = Mat::zero(s, 1, 2);
            for (i, row) in entries.into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    m.set(i, j, Ratio::from_scalar(v));
                }
            }
            m
        };
        let one = || Scalar::one(s);
        let zero = || Scalar::zero(s);
        let a_m = mk([[one(), q.clone()], [a.clone(), zero()]]);
        let b_m = mk([[a.clone(), one()], [one(), q.clone()]]);
        let c_m = mk([[q.clone(), a.clone()], [zero(), one()]]);
        let d_m = mk([[one(), zero()], [a.clone(), a.clone()]]);
        let lhs = a_m.kron(&b_m).unwrap().mul(&c_m.kron(&d_m).unwrap());
        let rhs = a_m.mul(&c_m).kron(&b_m.mul(&d_m)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_associativity() {
        let s = sp();
        let m = Mat::unit(s, 2, 1, 2);
        let i = Mat::identity(s, 1, 2);
        let l = m.kron(&i).unwrap().kron(&m).unwrap();
        let r = m.kron(&i.kron(&m).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn embed_adjacent_is_kron_with_identity() {
        let s = sp();
        let m = Mat::unit(s, 2, 1, 2).kron(&Mat::unit(s, 2, 2, 1)).unwrap();
        let e = m.embed(1, 2, 3).unwrap();
        let expect = m.kron(&Mat::identity(s, 1, 2)).unwrap();
        assert_eq!(e, expect);
        let id4 = Mat::identity(s, 2, 2);
        assert_eq!(id4.embed(1, 3, 3).unwrap(), Mat::identity(s, 3, 2));
    }

    #[test]
    fn embed_nonadjacent_swaps_legs_one_and_three() {
        let s = sp();
        // permutation matrix on V (x) V
        let mut p = Mat::zero(s, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                p.set(i * 2 + j, j * 2 + i, Ratio::one(s));
            }
        }
        let e = p.embed(1, 3, 3).unwrap();
        // check the action on all 8 basis vectors: e_(i,j,k) -> e_(k,j,i)
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let col = (i * 2 + j) * 2 + k;
                    let row = (k * 2 + j) * 2 + i;
                    assert!(e.get(row, col).is_one(), "({i},{j},{k})");
                    assert_eq!(
                        (0..8).filter(|&r| !e.get(r, col).is_zero()).count(),
                        1
                    );
                }
            }
        }
    }

    #[test]
    fn embeds_on_disjoint_legs_commute() {
        let s = sp();
        let q = Ratio::from_scalar(Scalar::q(s, 1, 2));
        let mut m1 = Mat::zero(s, 2, 2);
        m1.set(0, 3, q.clone());
        m1.set(2, 1, Ratio::one(s));
        m1.set(1, 1, q.clone());
        let mut m2 = Mat::zero(s, 2, 2);
        m2.set(3, 0, q.clone());
        m2.set(1, 2, Ratio::one(s));
        m2.set(2, 2, q);
        let a = m1.embed(1, 2, 4).unwrap();
        let b = m2.embed(3, 4, 4).unwrap();
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mat_poly_annihilates_eigenvalues() {
        let s = sp();
        let id = Mat::identity(s, 1, 2);
        assert!(id.mat_poly(&[Ratio::one(s)]).is_zero());

        let a = Ratio::from_scalar(Scalar::a(s));
        let mut d = Mat::zero(s, 1, 2);
        d.set(0, 0, Ratio::one(s));
        d.set(1, 1, a.neg());
        assert!(d.mat_poly(&[Ratio::one(s), a.neg()]).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let s = sp();
        let q = Ratio::from_scalar(Scalar::q(s, 1, 2));
        let a = Ratio::from_scalar(Scalar::a(s));
        let mut m = Mat::zero(s, 1, 2);
        m.set(0, 0, Ratio::one(s));
        m.set(0, 1, q.clone());
        m.set(1, 0, a.clone());
        m.set(1, 1, a.mul(&q).add(&Ratio::one(s)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(s, 1, 2));
    }

    #[test]
    fn matmul_associativity() {
        let s = sp();
        let q = Ratio::from_scalar(Scalar::q(s, 1, 2));
        let a = Ratio::from_scalar(Scalar::a(s));
        let mut m1 = Mat::zero(s, 1, 2);
        m1.set(0, 1, q.clone());
        m1.set(1, 0, a.clone());
        let mut m2 = Mat::zero(s, 1, 2);
        m2.set(0, 0, a.clone());
        m2.set(1, 1, q.clone());
        let mut m3 = Mat::zero(s, 1, 2);
        m3.set(0, 1, a.add(&q));
        m3.set(1, 1, Ratio::one(s));
        assert_eq!(m1.mul(&m2).mul(&m3), m1.mul(&m2.mul(&m3)));
    }
}
