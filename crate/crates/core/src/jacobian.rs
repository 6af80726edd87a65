//! Cohomology of the Jacobian: H*(J) = Λ(φ₁, …, φ₂g).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{AlgebraElement, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Which bundle's Segre classes to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegreKind {
    /// The extension bundle ℰ over J, with ch ℰ = g + 4ω.
    Extension,
    /// The bundle ℰ_ζ from the wall-crossing, with ch ℰ_ζ = 2g + 8ω.
    Wall,
}

#[derive(Debug, Clone)]
pub struct JacobianContext {
    genus: u32,
    sig: Arc<Signature>,
    omega_powers: Vec<AlgebraElement>,
    /// Coefficient of φ₁φ₂⋯φ₂g in ω^g / g!.
    volume_coefficient: Scalar,
}

impl JacobianContext {
    pub fn new(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Genus(0, "the Jacobian needs g >= 1"));
        }
        let g = genus as usize;
        let sig = Signature::exterior(2 * g)?;
        Ok(Self::with_signature(genus, sig))
    }

    /// Uses an existing signature whose last 2g odd generators are φ₁…φ₂g
    /// (so the same ω can live in Λ(φ) ⊗ ℚ[h]).
    pub fn with_signature(genus: u32, sig: Arc<Signature>) -> Self {
        let g = genus as usize;
        let n_even = sig.even().len();
        let mut omega = AlgebraElement::zero(&sig);
        for i in 0..g {
            let (m, negative) = Monomial::from_odd_indices(n_even, &[i, i + g]).expect("distinct");
            let c = if negative { -Scalar::one() } else { Scalar::one() };
            omega = &omega + &AlgebraElement::monomial(&sig, m, c);
        }
        let mut omega_powers = vec![AlgebraElement::one(&sig)];
        for k in 1..=g {
            let next = &omega_powers[k - 1] * &omega;
            omega_powers.push(next);
        }
        let top = Monomial::new(&vec![0; n_even], top_mask(g));
        let volume_coefficient = &omega_powers[g].coefficient(&top) / &Scalar::factorial(genus);
        JacobianContext { genus, sig, omega_powers, volume_coefficient }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn phi(&self, i: usize) -> AlgebraElement {
        AlgebraElement::generator(&self.sig, &format!("φ{i}")).expect("1 <= i <= 2g")
    }

    pub fn omega(&self) -> &AlgebraElement {
        &self.omega_powers[1]
    }

    /// ω^k, zero once k > g.
    pub fn omega_power(&self, k: u32) -> AlgebraElement {
        self.omega_powers
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(&self.sig))
    }

    /// ⟨a, [J]⟩ normalized by ∫ω^g = g!. Terms below top degree pair to zero.
    pub fn integrate(&self, a: &AlgebraElement) -> Scalar {
        let n_even = self.sig.even().len();
        let top = Monomial::new(&vec![0; n_even], top_mask(self.genus as usize));
        &a.coefficient(&top) / &self.volume_coefficient
    }

    /// c_i(ℰ) = 4^i / i! · ω^i.
    pub fn chern_class(&self, i: u32) -> AlgebraElement {
        self.omega_power(i).scale(&class_coefficient(4, i))
    }

    /// s_i(ℰ) = (−4)^i / i! · ω^i, s_i(ℰ_ζ) = (−8)^i / i! · ω^i.
    pub fn segre_class(&self, i: u32, kind: SegreKind) -> AlgebraElement {
        let base = match kind {
            SegreKind::Extension => -4,
            SegreKind::Wall => -8,
        };
        self.omega_power(i).scale(&class_coefficient(base, i))
    }

    /// All monomials of Λ^d(φ), as masks in ascending numeric order.
    pub fn basis_masks(&self, d: u32) -> Vec<u64> {
        masks_of_weight(2 * self.genus as usize, d as usize)
    }

    pub fn basis_element(&self, mask: u64) -> AlgebraElement {
        let n_even = self.sig.even().len();
        AlgebraElement::monomial(&self.sig, Monomial::new(&vec![0; n_even], mask), Scalar::one())
    }
}

fn top_mask(g: usize) -> u64 {
    if 2 * g >= 64 {
        u64::MAX
    } else {
        (1u64 << (2 * g)) - 1
    }
}

fn class_coefficient(base: i64, i: u32) -> Scalar {
    &Scalar::from_int(base).pow(i) / &Scalar::factorial(i)
}

pub(crate) fn masks_of_weight(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    // Gosper's hack over n bits.
    let mut m: u64 = (1u64 << k) - 1;
    let limit: u64 = if n >= 64 { u64::MAX } else { 1u64 << n };
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
        if r == 0 {
            break;
        }
    }
    out
}

fn binom(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = k as u64;
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// dim Λ₀^k: the kernel of ω^{g−k+1} on Λ^k of a 2g-dimensional symplectic
/// space, by exact rank. Also checked against C(2g,k) − C(2g,k−2).
pub fn primitive_dim(genus: u32, k: u32) -> Result<u64> {
    if genus == 0 {
        return Err(Error::Genus(0, "primitive_dim needs g >= 1"));
    }
    if k > genus {
        return Err(Error::OutOfRange(format!("k = {k} exceeds g = {genus}")));
    }
    let ctx = JacobianContext::new(genus)?;
    let g = genus as usize;
    let power = ctx.omega_power(genus - k + 1);
    let sources = ctx.basis_masks(k);

    // ω-multiplication only fills empty symplectic pairs, so the pattern of
    // half-filled pairs is preserved and the matrix is block diagonal.
    let pair_low = top_mask(g) >> g;
    let half_filled = |m: u64| {
        let lo = m & pair_low;
        let hi = (m >> g) & pair_low;
        let single = lo ^ hi;
        m & (single | (single << g))
    };
    let mut blocks: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &m in &sources {
        blocks.entry(half_filled(m)).or_default().push(m);
    }

    let mut total_rank = 0usize;
    for members in blocks.values() {
        let mut columns: BTreeMap<u64, usize> = BTreeMap::new();
        let mut rows = Vec::with_capacity(members.len());
        for &m in members {
            let image = &power * &ctx.basis_element(m);
            let mut row: Vec<(usize, Scalar)> = image
                .terms()
                .iter()
                .map(|(mono, c)| {
                    let next = columns.len();
                    (*columns.entry(mono.odd_mask()).or_insert(next), c.clone())
                })
                .collect();
            row.sort_by_key(|e| e.0);
            rows.push(row);
        }
        if !columns.is_empty() {
            total_rank += linalg::rank(rows);
        }
    }
    let kernel = sources.len() as u64 - total_rank as u64;
    let formula = primitive_dim_formula(genus, k);
    if kernel != formula {
        return Err(Error::OutOfRange(format!(
            "primitive dimension by rank {kernel} differs from C(2g,k) - C(2g,k-2) = {formula}"
        )));
    }
    Ok(kernel)
}

/// C(2g,k) − C(2g,k−2) with C(n,−1) = C(n,−2) = 0.
pub fn primitive_dim_formula(genus: u32, k: u32) -> u64 {
    binom(2 * genus as u64, k as i64) - binom(2 * genus as u64, k as i64 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn omega_powers_vanish_past_g() {
        let ctx = JacobianContext::new(2).unwrap();
        assert_eq!(ctx.omega_power(0), AlgebraElement::one(ctx.signature()));
        assert!(ctx.omega_power(3).is_zero());
        assert!(!ctx.omega_power(2).is_zero());
    }

    #[test]
    fn omega_cubed_at_genus_three() {
        let ctx = JacobianContext::new(3).unwrap();
        // 3! · φ1φ4·φ2φ5·φ3φ6, then sorted to φ1…φ6.
        let ordered = &(&(&(&(&ctx.phi(1) * &ctx.phi(4)) * &ctx.phi(2)) * &ctx.phi(5)) * &ctx.phi(3)) * &ctx.phi(6);
        assert_eq!(ctx.omega_power(3), ordered.scale(&Scalar::from_int(6)));
    }

    #[test]
    fn integration_normalization() {
        for g in 1..=5 {
            let ctx = JacobianContext::new(g).unwrap();
            assert_eq!(ctx.integrate(&ctx.omega_power(g)), Scalar::factorial(g));
            assert!(ctx.integrate(&ctx.omega_power(g - 1)).is_zero());
            let pair = &ctx.phi(1) * &ctx.phi(g as usize + 1);
            let e = &pair * &ctx.omega_power(g - 1);
            assert_eq!(ctx.integrate(&e), Scalar::factorial(g - 1));
        }
    }

    #[test]
    fn chern_and_segre_examples() {
        let ctx = JacobianContext::new(3).unwrap();
        let w = ctx.omega().clone();
        assert_eq!(ctx.chern_class(0), AlgebraElement::one(ctx.signature()));
        assert_eq!(ctx.chern_class(1), w.scale(&Scalar::from_int(4)));
        assert_eq!(ctx.chern_class(2), ctx.omega_power(2).scale(&Scalar::from_int(8)));
        assert_eq!(ctx.segre_class(1, SegreKind::Extension), w.scale(&Scalar::from_int(-4)));
        assert_eq!(ctx.segre_class(2, SegreKind::Wall), ctx.omega_power(2).scale(&Scalar::from_int(32)));
        assert_eq!(ctx.segre_class(0, SegreKind::Wall), AlgebraElement::one(ctx.signature()));
    }

    #[test]
    fn total_chern_times_total_segre_is_one() {
        for g in 1..=4 {
            let ctx = JacobianContext::new(g).unwrap();
            let c: AlgebraElement = (0..=g).fold(AlgebraElement::zero(ctx.signature()), |acc, i| &acc + &ctx.chern_class(i));
            let s: AlgebraElement = (0..=g).fold(AlgebraElement::zero(ctx.signature()), |acc, i| {
                &acc + &ctx.segre_class(i, SegreKind::Extension)
            });
            assert_eq!(&c * &s, AlgebraElement::one(ctx.signature()));
        }
    }

    #[test]
    fn primitive_dimensions() {
        assert_eq!(primitive_dim(3, 0).unwrap(), 1);
        assert_eq!(primitive_dim(3, 1).unwrap(), 6);
        assert_eq!(primitive_dim(3, 2).unwrap(), 14);
        assert_eq!(primitive_dim(2, 1).unwrap(), 4);
        assert!(primitive_dim(3, 4).is_err());
        for g in 1..=5 {
            for k in 0..=g {
                assert_eq!(primitive_dim(g, k).unwrap(), primitive_dim_formula(g, k));
            }
        }
    }

    #[test]
    fn gosper_enumeration() {
        assert_eq!(masks_of_weight(4, 2).len(), 6);
        assert_eq!(masks_of_weight(6, 0), vec![0]);
        assert!(masks_of_weight(3, 4).is_empty());
        assert_eq!(masks_of_weight(5, 5), vec![0b11111]);
    }
}
