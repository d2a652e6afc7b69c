//! Lattices with exact rational Gram matrices.

use crate::matrix::{self, RatMat};
use crate::rat::{is_integer, rat, Rat};
use crate::{LatticeError, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Definiteness of the (signed) pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

/// A lattice of finite rank with a nondegenerate symmetric rational pairing.
///
/// Definite lattices are stored positive-definite: a negative-definite input
/// Gram matrix is negated on construction and the `negated` flag records the
/// true sign. Indefinite Gram matrices are stored as given with
/// `negated == false`. All queries about the *pairing* (`inner`, `det`,
/// `signature`, …) refer to the true, signed pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    label: String,
    gram: RatMat,
    negated: bool,
    definiteness: Definiteness,
}

impl Lattice {
    /// Build a lattice from a symmetric nondegenerate Gram matrix.
    pub fn new(label: impl Into<String>, gram: RatMat) -> Result<Self> {
        matrix::check_symmetric(&gram)?;
        let n = gram.len();
        let (pos, neg, zero) = matrix::signature_of_symmetric(&gram);
        if zero != 0 {
            return Err(LatticeError::Degenerate);
        }
        let (stored, negated, definiteness) = if neg == n && n > 0 {
            let flipped: RatMat = gram
                .iter()
                .map(|row| row.iter().map(|x| -x.clone()).collect())
                .collect();
            (flipped, true, Definiteness::NegativeDefinite)
        } else if pos == n {
            (gram, false, Definiteness::PositiveDefinite)
        } else {
            (gram, false, Definiteness::Indefinite)
        };
        Ok(Lattice { label: label.into(), gram: stored, negated, definiteness })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Stored Gram matrix: the positive-definite model when the lattice is
    /// definite (see [`Lattice::negated`]), the matrix as given otherwise.
    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    /// Stored Gram matrix (positive-definite whenever the lattice is definite).
    pub fn stored_gram(&self) -> &RatMat {
        &self.gram
    }

    /// True if the actual pairing is the negation of the stored Gram matrix.
    pub fn negated(&self) -> bool {
        self.negated
    }

    /// Gram matrix of the true (signed) pairing.
    pub fn signed_gram(&self) -> RatMat {
        if self.negated {
            self.gram
                .iter()
                .map(|row| row.iter().map(|x| -x.clone()).collect())
                .collect()
        } else {
            self.gram.clone()
        }
    }

    /// Pairing of two coordinate vectors (true sign).
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        let n = self.rank();
        if x.len() != n {
            return Err(LatticeError::WrongDimension { expected: n, got: x.len() });
        }
        if y.len() != n {
            return Err(LatticeError::WrongDimension { expected: n, got: y.len() });
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() {
                    acc += &x[i] * &self.gram[i][j] * &y[j];
                }
            }
        }
        Ok(if self.negated { -acc } else { acc })
    }

    /// Self-pairing of a coordinate vector (true sign).
    pub fn norm(&self, x: &[Rat]) -> Result<Rat> {
        self.inner(x, x)
    }

    /// Determinant of the true pairing.
    pub fn det(&self) -> Rat {
        let d = matrix::det(&self.gram);
        if self.negated && self.rank() % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness
    }

    /// Signature `(p, q)` of the true pairing.
    pub fn signature(&self) -> (usize, usize) {
        match self.definiteness {
            Definiteness::PositiveDefinite => (self.rank(), 0),
            Definiteness::NegativeDefinite => (0, self.rank()),
            Definiteness::Indefinite => {
                let (p, q, _) = matrix::signature_of_symmetric(&self.gram);
                debug_assert!(!self.negated);
                (p, q)
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(is_integer)
    }

    /// Even lattice: integral with even self-pairings.
    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| (&self.gram[i][i] / rat(2)).denom() == &BigInt::from(1))
    }

    /// Invariant factors (> 1, divisibility order) of the discriminant group
    /// `L^∨ / L`. Requires an integral Gram matrix.
    pub fn discriminant_group(&self) -> Result<Vec<BigInt>> {
        if !self.is_integral() {
            return Err(LatticeError::NotIntegral("discriminant_group"));
        }
        let m: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x.numer().clone()).collect())
            .collect();
        Ok(crate::intmat::smith_invariants(&m))
    }

    /// Rows are the coordinates (in this lattice's basis) of the dual basis
    /// vectors with respect to the true pairing.
    pub fn dual_basis(&self) -> Result<RatMat> {
        matrix::inverse(&self.signed_gram()).ok_or(LatticeError::Degenerate)
    }

    /// Same underlying module with the pairing negated.
    pub fn negate(&self, label: impl Into<String>) -> Lattice {
        let flipped: RatMat = self
            .signed_gram()
            .iter()
            .map(|row| row.iter().map(|x| -x.clone()).collect())
            .collect();
        Lattice::new(label, flipped).expect("negation preserves validity")
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(label: impl Into<String>, parts: &[&Lattice]) -> Result<Lattice> {
        let total: usize = parts.iter().map(|l| l.rank()).sum();
        let mut gram = vec![vec![Rat::zero(); total]; total];
        let mut off = 0usize;
        for part in parts {
            let g = part.signed_gram();
            let r = part.rank();
            for i in 0..r {
                for j in 0..r {
                    gram[off + i][off + j] = g[i][j].clone();
                }
            }
            off += r;
        }
        Lattice::new(label, gram)
    }
}

fn a_series_gram(n: usize) -> RatMat {
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        g[i][i] = rat(2);
        if i + 1 < n {
            g[i][i + 1] = rat(-1);
            g[i + 1][i] = rat(-1);
        }
    }
    g
}

/// Rank-3 indefinite form with Gram `[[-2,1,0],[1,-2,eps],[0,eps,2n]]`
/// (`eps` ∈ {0,1}); determinant `6n + 2·eps`, signature (1,2).
pub fn bn_lattice(n: u64, eps: u8) -> Result<Lattice> {
    if n == 0 {
        return Err(LatticeError::InvalidParameter("bn_lattice needs n >= 1".into()));
    }
    if eps > 1 {
        return Err(LatticeError::InvalidParameter("bn_lattice eps must be 0 or 1".into()));
    }
    let e = rat(eps as i64);
    let gram = vec![
        vec![rat(-2), rat(1), rat(0)],
        vec![rat(1), rat(-2), e.clone()],
        vec![rat(0), e, rat(2) * rat(n as i64)],
    ];
    Lattice::new(format!("B_{{{n},{eps}}}"), gram)
}

/// Construct one of the named standard lattices.
///
/// Supported: `U`, `A1`, `A2`, `A3`, `A5`, `D4`, `E6`, `E8`, `E8(-1)`,
/// `B1`, `B2`, `B3` (the three rank-5/4/4 positive-definite forms used by the
/// theta tables) and `L_2_26` (= U ⊕ U ⊕ E8(-1)^3).
pub fn standard_lattice(name: &str) -> Result<Lattice> {
    match name {
        "U" => Lattice::new(
            "U",
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]],
        ),
        "A1" => Lattice::new("A1", a_series_gram(1)),
        "A2" => Lattice::new("A2", a_series_gram(2)),
        "A3" => Lattice::new("A3", a_series_gram(3)),
        "A5" => Lattice::new("A5", a_series_gram(5)),
        "D4" => Lattice::new(
            "D4",
            vec![
                vec![rat(2), rat(0), rat(-1), rat(0)],
                vec![rat(0), rat(2), rat(-1), rat(0)],
                vec![rat(-1), rat(-1), rat(2), rat(-1)],
                vec![rat(0), rat(0), rat(-1), rat(2)],
            ],
        ),
        "E6" => {
            let m = crate::model::model();
            Lattice::new("E6", m.e6_gram.clone())
        }
        "E8" => {
            let m = crate::model::model();
            Lattice::new("E8", m.e8_gram_rat.clone())
        }
        "E8(-1)" => Ok(standard_lattice("E8")?.negate("E8(-1)")),
        "B1" | "B2" | "B3" => {
            let m = crate::model::model();
            let idx = (name.as_bytes()[1] - b'1') as usize;
            Lattice::new(name, m.b_forms[idx].clone())
        }
        "L_2_26" => {
            let u = standard_lattice("U")?;
            let e8n = standard_lattice("E8(-1)")?;
            Lattice::direct_sum("L_2_26", &[&u, &u, &e8n, &e8n, &e8n])
        }
        other => {
            // `Bn:<n>:<eps>` spelling for the rank-3 family.
            if let Some(rest) = other.strip_prefix("Bn:") {
                let mut it = rest.split(':');
                let n: u64 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| LatticeError::UnknownName(other.into()))?;
                let eps: u8 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| LatticeError::UnknownName(other.into()))?;
                return bn_lattice(n, eps);
            }
            Err(LatticeError::UnknownName(other.into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn hyperbolic_plane() {
        let u = standard_lattice("U").unwrap();
        assert_eq!(u.det(), rat(-1));
        assert_eq!(u.signature(), (1, 1));
        assert_eq!(u.definiteness(), Definiteness::Indefinite);
        assert!(u.discriminant_group().unwrap().is_empty());
        assert!(u.is_even());
    }

    #[test]
    fn negative_definite_stored_positively() {
        let e8n = standard_lattice("E8(-1)").unwrap();
        assert!(e8n.negated());
        assert_eq!(e8n.definiteness(), Definiteness::NegativeDefinite);
        assert_eq!(e8n.det(), rat(1)); // rank 8: (-1)^8 det E8 = 1
        assert_eq!(e8n.signature(), (0, 8));
        assert_eq!(e8n.norm(&[rat(1), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)]).unwrap(), rat(-4));
    }

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(standard_lattice("A1").unwrap().det(), rat(2));
        assert_eq!(standard_lattice("A2").unwrap().det(), rat(3));
        assert_eq!(standard_lattice("A5").unwrap().det(), rat(6));
        assert_eq!(standard_lattice("D4").unwrap().det(), rat(4));
        assert_eq!(standard_lattice("E6").unwrap().det(), rat(3));
        assert_eq!(standard_lattice("E8").unwrap().det(), rat(1));
    }

    #[test]
    fn theta_form_determinants() {
        assert_eq!(standard_lattice("B1").unwrap().det(), frac(2, 3));
        assert_eq!(standard_lattice("B2").unwrap().det(), rat(1));
        assert_eq!(standard_lattice("B3").unwrap().det(), frac(4, 3));
    }

    #[test]
    fn rank3_family() {
        let b = bn_lattice(1, 1).unwrap();
        assert_eq!(b.det(), rat(8));
        assert_eq!(b.signature(), (1, 2));
        let b = bn_lattice(20, 0).unwrap();
        assert_eq!(b.det(), rat(120));
        assert_eq!(standard_lattice("Bn:20:0").unwrap().det(), rat(120));
        assert!(bn_lattice(0, 0).is_err());
        assert!(bn_lattice(3, 2).is_err());
    }

    #[test]
    fn big_even_unimodular() {
        let l = standard_lattice("L_2_26").unwrap();
        assert_eq!(l.rank(), 28);
        assert_eq!(l.signature(), (2, 26));
        assert_eq!(l.det().numer().clone(), BigInt::from(1));
        assert!(l.is_even());
        assert!(l.discriminant_group().unwrap().is_empty());
    }

    #[test]
    fn dual_basis_of_a2() {
        let a2 = standard_lattice("A2").unwrap();
        let dual = a2.dual_basis().unwrap();
        assert_eq!(dual[0], vec![frac(2, 3), frac(1, 3)]);
        // Dual vectors pair integrally with the lattice basis.
        let e0 = [rat(1), rat(0)];
        assert_eq!(a2.inner(&dual[0], &e0).unwrap(), rat(1));
        assert_eq!(a2.inner(&dual[1], &e0).unwrap(), rat(0));
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(Lattice::new("bad", vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]]).is_err());
        assert!(Lattice::new("sing", vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]).is_err());
    }
}
