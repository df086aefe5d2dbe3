//! Exact scalar arithmetic over the parameter field.
//!
//! The coefficient domain for everything downstream is the field of rational
//! functions in the twist parameters `q_ij` (one per pair `1 <= i < j <= N`)
//! and the Hecke parameter `a`, with exponents on the lattice
//! `(1/exp_denom) Z`. Only the `q_ij` with `i < j` are stored; `q_ji` is the
//! inverse monomial, so `q_ij * q_ji = 1` holds structurally rather than as a
//! relation. The fractional lattice (default denominator `2N`) makes the
//! N-th roots and half-integer powers of the sl(N) reduction representable
//! without any field extension.

mod cyclotomic;
mod field;
mod qcomb;
mod ratio;
mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, CycScalar};
pub use field::Coeff;
pub use qcomb::{
    gexp_scheme, q_factorial, q_int, qexp_coeffs, verify_gexp_recursion_classical,
    verify_gexp_recursion_generic, verify_gexp_recursion_root, GExpTerm, QFlavor,
};
pub use ratio::Ratio;
pub use scalar::{Assignment, Scalar};

/// The parameter lattice of one verification run: the matrix size `N`, the
/// list of stored parameters, and the exponent denominator.
///
/// Copyable on purpose; every scalar carries its space so that mixed-space
/// arithmetic can be rejected early.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ParamSpace {
    n: u32,
    exp_denom: i64,
}

impl ParamSpace {
    /// Space for matrix size `n` with the default exponent denominator `2n`.
    pub fn new(n: u32) -> Self {
        assert!(n >= 2, "matrix size must be at least 2");
        ParamSpace {
            n,
            exp_denom: 2 * n as i64,
        }
    }

    /// Space with an explicit exponent denominator.
    pub fn with_exp_denom(n: u32, exp_denom: i64) -> Self {
        assert!(n >= 2, "matrix size must be at least 2");
        assert!(exp_denom > 0, "exponent denominator must be positive");
        ParamSpace { n, exp_denom }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn exp_denom(&self) -> i64 {
        self.exp_denom
    }

    /// Number of stored parameters: one `q_ij` per pair plus `a`.
    pub fn num_params(&self) -> usize {
        let n = self.n as usize;
        n * (n - 1) / 2 + 1
    }

    /// Index of the stored parameter `q_ij`, `1 <= i < j <= N`.
    pub fn q_param(&self, i: usize, j: usize) -> usize {
        let n = self.n as usize;
        assert!(1 <= i && i < j && j <= n, "q_param needs 1 <= i < j <= N");
        // pairs ordered (1,2), (1,3), ..., (1,N), (2,3), ...
        (i - 1) * n - (i - 1) * i / 2 + (j - i) - 1
    }

    /// Index of the Hecke parameter `a` (always last).
    pub fn a_param(&self) -> usize {
        self.num_params() - 1
    }

    /// Human-readable parameter name, e.g. `q12` or `a`.
    pub fn param_name(&self, p: usize) -> String {
        if p == self.a_param() {
            return "a".to_string();
        }
        let n = self.n as usize;
        let mut idx = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                if idx == p {
                    return format!("q{i}{j}");
                }
                idx += 1;
            }
        }
        panic!("parameter index {p} out of range");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_indexing_roundtrip() {
        let sp = ParamSpace::new(4);
        assert_eq!(sp.num_params(), 7);
        let mut seen = vec![false; sp.num_params()];
        for i in 1..=4 {
            for j in (i + 1)..=4 {
                let p = sp.q_param(i, j);
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
        seen[sp.a_param()] = true;
        assert!(seen.iter().all(|&b| b));
        assert_eq!(sp.param_name(sp.q_param(2, 4)), "q24");
        assert_eq!(sp.param_name(sp.a_param()), "a");
    }
}
