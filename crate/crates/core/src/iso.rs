//! Comparing the quantum and Floer presentations, the two low-genus
//! exceptional presentations, and Poincaré series of the block
//! decomposition.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Monomial, Signature};
use crate::cache::IdealStore;
use crate::error::{Error, Result};
use crate::ideal::{default_cap, ideal_equal, GradedIdeal};
use crate::jacobian::{primitive_dim, primitive_dim_formula};
use crate::presentation::{floer_triple, quantum_triple};
use crate::report::Report;
use crate::scalar::Scalar;

/// A diagonal substitution x_k ↦ s_k·y_k between two rings with the same
/// generator shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMap {
    pub name: &'static str,
    pub scalars: Vec<Scalar>,
}

impl SubstitutionMap {
    /// (α, β, γ) ↦ (i^g α, i^{2g} β, i^{3g} γ).
    pub fn sigma(genus: u32) -> Self {
        let g = genus as i64;
        SubstitutionMap { name: "sigma", scalars: vec![Scalar::i_pow(g), Scalar::i_pow(2 * g), Scalar::i_pow(3 * g)] }
    }

    /// The identity for even g and (iα, −β, −iγ) for odd g.
    pub fn stated(genus: u32) -> Self {
        let scalars = if genus.is_multiple_of(2) {
            vec![Scalar::one(), Scalar::one(), Scalar::one()]
        } else {
            vec![Scalar::i(), -Scalar::one(), -Scalar::i()]
        };
        SubstitutionMap { name: "stated", scalars }
    }

    /// (iα, −β, −iγ) at any genus.
    pub fn odd_form() -> Self {
        SubstitutionMap::stated(1)
    }

    pub fn apply(&self, p: &AlgebraElement, target: &Arc<Signature>) -> Result<AlgebraElement> {
        let sig = p.signature();
        if !sig.same_shape(target) || sig.even().len() != self.scalars.len() || !sig.odd().is_empty() {
            return Err(Error::SignatureMismatch);
        }
        Ok(AlgebraElement::from_terms(
            target,
            p.terms().iter().map(|(m, c)| {
                let factor = m
                    .exps()
                    .iter()
                    .zip(&self.scalars)
                    .fold(c.clone(), |acc, (&e, s)| &acc * &s.pow(e));
                (Monomial::new(m.exps(), 0), factor)
            }),
        ))
    }
}

/// The image of `p` under σ_g, in the same ring.
pub fn apply_substitution(genus: u32, p: &AlgebraElement) -> Result<AlgebraElement> {
    SubstitutionMap::sigma(genus).apply(p, p.signature())
}

/// The scalar s with p = s·q, if there is one.
pub fn scalar_multiple(p: &AlgebraElement, q: &AlgebraElement) -> Option<Scalar> {
    if p.is_zero() && q.is_zero() {
        return Some(Scalar::one());
    }
    let (m, c) = q.terms().iter().next_back()?;
    let s = &p.coefficient(m) / c;
    if !s.is_zero() && q.scale(&s) == *p {
        Some(s)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorScalar {
    pub r: u32,
    pub j: usize,
    pub scalar: Option<Scalar>,
}

/// For r = 1..=g and j = 1..3, the scalar relating map(Q_r^j) to R_r^j.
pub fn generator_scalars(genus: u32, map: &SubstitutionMap) -> Result<Vec<GeneratorScalar>> {
    let ring = Signature::invariant_ring();
    let mut out = Vec::new();
    for r in 1..=genus {
        let q = quantum_triple(r, genus)?;
        let f = floer_triple(r);
        for j in 0..3 {
            let image = map.apply(&q.gens[j], &ring)?;
            out.push(GeneratorScalar { r, j: j + 1, scalar: scalar_multiple(&image, &f.gens[j]) });
        }
    }
    Ok(out)
}

fn mapped_ideal(gens: &[AlgebraElement], map: &SubstitutionMap, target: &Arc<Signature>, cap: u32) -> Result<GradedIdeal> {
    let images: Vec<AlgebraElement> = gens.iter().map(|g| map.apply(g, target)).collect::<Result<_>>()?;
    GradedIdeal::build(&images, cap)
}

fn describe_scalars(s: &[GeneratorScalar]) -> String {
    s.iter()
        .map(|x| match &x.scalar {
            Some(v) => format!("j={}: {}", x.j, v),
            None => format!("j={}: none", x.j),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks map(J_r) = I'_r for r = 1..=g under σ_g and under the stated map.
pub fn verify_isomorphism(genus: u32, store: &IdealStore) -> Result<Report> {
    if genus == 0 {
        return Err(Error::Genus(0, "the isomorphism needs g >= 1"));
    }
    let ring = Signature::invariant_ring();
    let maps = [SubstitutionMap::sigma(genus), SubstitutionMap::stated(genus)];
    let rows: Vec<Result<Vec<(String, bool, String)>>> = (1..=genus)
        .into_par_iter()
        .map(|r| {
            let q = quantum_triple(r, genus)?;
            let floer = store.ideal(&floer_triple(r))?;
            let mut checks = Vec::new();
            for map in &maps {
                let image = mapped_ideal(&q.gens, map, &ring, default_cap(r))?;
                let equal = ideal_equal(&image, &floer)?;
                checks.push((format!("r={r} {}", map.name), equal, format!("quotient dimension {}", image.quotient_dim(r)?)));
            }
            Ok(checks)
        })
        .collect();
    let mut report = Report::new("iso", genus);
    for row in rows {
        for (name, pass, detail) in row? {
            report.check(name, pass, detail);
        }
    }
    for map in &maps {
        let scalars = generator_scalars(genus, map)?;
        for r in 1..=genus {
            let at_r: Vec<GeneratorScalar> = scalars.iter().filter(|s| s.r == r).cloned().collect();
            report.note(format!("r={r} {} scalars", map.name), describe_scalars(&at_r));
        }
    }
    Ok(report)
}

/// Genus 1: ℚ[α, β̂, γ]/(α, β̂ + 8, γ) with β̂ = β − 8.
pub fn special_case_g1(store: &IdealStore) -> Result<Report> {
    let hat = Signature::beta_hatted_ring();
    let gen = |n: &str| AlgebraElement::generator(&hat, n).expect("hatted generator");
    let eight = AlgebraElement::from_int(&hat, 8);
    let gens = [gen("α"), &gen("β̂") + &eight, gen("γ")];
    let ideal = GradedIdeal::build(&gens, default_cap(1))?;
    let mut report = Report::new("g1", 1);

    let dim = ideal.quotient_dim(1)?;
    report.check("quotient dimension", dim == 1, format!("{dim}"));
    let nf = ideal.normal_form(&gen("β̂"), 1)?.to_element();
    report.check("normal form of β̂", nf == AlgebraElement::from_int(&hat, -8), format!("{nf}"));

    let ring = Signature::invariant_ring();
    let image = mapped_ideal(&gens, &SubstitutionMap::odd_form(), &ring, default_cap(1))?;
    let floer = store.ideal(&floer_triple(1))?;
    report.check("(iα, -β, -iγ) carries the relations onto the Floer ideal", ideal_equal(&image, &floer)?, "");
    Ok(report)
}

/// The genus 2 quantum relations in the variables α, β̂, γ̂.
pub fn genus2_hatted_triple() -> [AlgebraElement; 3] {
    let hat = Signature::hatted_ring();
    let gen = |n: &str| AlgebraElement::generator(&hat, n).expect("hatted generator");
    let k = |n: i64| AlgebraElement::from_int(&hat, n);
    let a = gen("α");
    [
        &(&(&a * &a) + &gen("β̂")) - &k(8),
        &(&(&gen("β̂") + &k(8)) * &a) + &gen("γ̂"),
        &a * &gen("γ̂"),
    ]
}

/// Genus 2: the hatted relations, block dimensions and the map to the
/// Floer presentation.
pub fn special_case_g2(store: &IdealStore) -> Result<Report> {
    let hat = Signature::hatted_ring();
    let gen = |n: &str| AlgebraElement::generator(&hat, n).expect("hatted generator");
    let k = |n: i64| AlgebraElement::from_int(&hat, n);
    let mut report = Report::new("g2", 2);

    let q2 = quantum_triple(2, 2)?.relabel(&hat)?;
    let expected = genus2_hatted_triple();
    report.check(
        "invariant relations",
        q2 == expected,
        format!("({}, {}, {})", q2[0], q2[1], q2[2]),
    );
    let q1 = quantum_triple(1, 2)?.relabel(&hat)?;
    let h3 = [gen("α"), &gen("β̂") - &k(8), gen("γ̂")];
    report.check("H³ block relations", q1 == h3, format!("({}, {}, {})", q1[0], q1[1], q1[2]));

    let h3_dim = GradedIdeal::build(&q1, default_cap(1))?.quotient_dim(1)?;
    let inv_dim = GradedIdeal::build(&q2, default_cap(2))?.quotient_dim(2)?;
    report.check("H³ block dimension", h3_dim == 1, format!("{h3_dim}"));
    report.check("invariant block dimension", inv_dim == 4, format!("{inv_dim}"));
    let total = primitive_dim(2, 0)? as usize * inv_dim + primitive_dim(2, 1)? as usize * h3_dim;
    let series_total: u64 = poincare_series(2)?.iter().sum();
    report.check("total dimension", total == 8 && series_total == 8, format!("{total}"));

    let ring = Signature::invariant_ring();
    let sigma = SubstitutionMap::sigma(2);
    for (r, gens) in [(1u32, &q1), (2, &q2)] {
        let floer = store.ideal(&floer_triple(r))?;
        let image = mapped_ideal(gens, &sigma, &ring, default_cap(r))?;
        report.check(format!("r={r} (-α, β, -γ) onto the Floer ideal"), ideal_equal(&image, &floer)?, "");
    }
    let literal: Vec<bool> = [(1u32, &q1), (2, &q2)]
        .iter()
        .map(|(r, gens)| {
            let floer = store.ideal(&floer_triple(*r))?;
            let image = mapped_ideal(&gens[..], &SubstitutionMap::odd_form(), &ring, default_cap(*r))?;
            ideal_equal(&image, &floer)
        })
        .collect::<Result<_>>()?;
    report.note(
        "(iα, -β, -iγ)",
        format!(
            "carries the hatted relations onto the Floer ideals: r=1 {}, r=2 {}",
            literal[0], literal[1]
        ),
    );
    Ok(report)
}

/// Σ_k t^{3k}·dim Λ₀^k·Σ_{a+b+c<g−k} t^{2a+4b+6c}, as a coefficient list.
pub fn poincare_series(genus: u32) -> Result<Vec<u64>> {
    if genus == 0 {
        return Err(Error::Genus(0, "the series needs g >= 1"));
    }
    let top = 6 * genus as usize - 6;
    let mut coeffs = vec![0u64; top + 1];
    for k in 0..genus {
        let prim = primitive_dim(genus, k)?;
        let n = genus - k;
        for a in 0..n {
            for b in 0..n - a {
                for c in 0..n - a - b {
                    coeffs[3 * k as usize + 2 * a as usize + 4 * b as usize + 6 * c as usize] += prim;
                }
            }
        }
    }
    Ok(coeffs)
}

/// Σ_k (C(2g,k) − C(2g,k−2))·C(g−k+2, 3).
pub fn total_dimension_formula(genus: u32) -> u64 {
    (0..genus)
        .map(|k| {
            let n = (genus - k) as u64;
            primitive_dim_formula(genus, k) * (n + 2) * (n + 1) * n / 6
        })
        .sum()
}

pub fn render_series(coeffs: &[u64]) -> String {
    let sup = |n: usize| -> String {
        const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
    };
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| {
            let coef = if c == 1 && d > 0 { String::new() } else { c.to_string() };
            match d {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t{}", sup(d)),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn poincare_report(genus: u32) -> Result<Report> {
    let coeffs = poincare_series(genus)?;
    let mut report = Report::new("poincare", genus);
    report.check("series", true, render_series(&coeffs));
    let palindromic = coeffs.iter().eq(coeffs.iter().rev());
    report.check("palindromic", palindromic, format!("degree {}", coeffs.len() - 1));
    let total: u64 = coeffs.iter().sum();
    let expected = total_dimension_formula(genus);
    report.check("total dimension", total == expected, format!("{total} (formula {expected})"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Signature> {
        Signature::invariant_ring()
    }

    fn g(n: &str) -> AlgebraElement {
        AlgebraElement::generator(&ring(), n).unwrap()
    }

    fn k(n: i64) -> AlgebraElement {
        AlgebraElement::from_int(&ring(), n)
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(apply_substitution(3, &g("β")).unwrap(), -&g("β"));
        for n in ["α", "β", "γ"] {
            assert_eq!(apply_substitution(4, &g(n)).unwrap(), g(n));
        }
        let q = quantum_triple(1, 3).unwrap();
        let r = floer_triple(1);
        let image = apply_substitution(3, &q.gens[1]).unwrap();
        assert_eq!(image, &k(8) - &g("β"));
        assert_eq!(image, -&r.gens[1]);
        assert_eq!(SubstitutionMap::sigma(2).scalars, vec![-Scalar::one(), Scalar::one(), -Scalar::one()]);
        assert_eq!(SubstitutionMap::sigma(3).scalars, vec![-Scalar::i(), -Scalar::one(), Scalar::i()]);
    }

    #[test]
    fn scalars_at_genus_three() {
        let s = generator_scalars(3, &SubstitutionMap::sigma(3)).unwrap();
        let r1j2 = s.iter().find(|x| x.r == 1 && x.j == 2).unwrap();
        assert_eq!(r1j2.scalar, Some(-Scalar::one()));
        let unit = [Scalar::one(), -Scalar::one(), Scalar::i(), -Scalar::i()];
        assert!(s.iter().all(|x| x.scalar.as_ref().is_some_and(|v| unit.contains(v))));
    }

    #[test]
    fn scalar_multiple_detects_non_multiples() {
        assert_eq!(scalar_multiple(&(&g("β") - &k(8)), &(&k(8) - &g("β"))), Some(-Scalar::one()));
        assert_eq!(scalar_multiple(&(&g("β") + &k(8)), &(&g("β") - &k(8))), None);
        assert_eq!(scalar_multiple(&k(0), &g("β")), None);
    }

    #[test]
    fn isomorphism_small_genera() {
        let store = IdealStore::default();
        for genus in 1..=3 {
            let report = verify_isomorphism(genus, &store).unwrap();
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn special_cases() {
        let store = IdealStore::default();
        let r1 = special_case_g1(&store).unwrap();
        assert!(r1.all_pass(), "{r1}");
        let r2 = special_case_g2(&store).unwrap();
        assert!(r2.all_pass(), "{r2}");
        assert!(r2.notes[0].detail.contains("r=1 false"));
    }

    #[test]
    fn series() {
        assert_eq!(poincare_series(1).unwrap(), vec![1]);
        assert_eq!(poincare_series(2).unwrap(), vec![1, 0, 1, 4, 1, 0, 1]);
        assert_eq!(render_series(&poincare_series(2).unwrap()), "1 + t² + 4t³ + t⁴ + t⁶");
        assert_eq!(
            poincare_series(3).unwrap(),
            vec![1, 0, 1, 6, 2, 6, 16, 6, 2, 6, 1, 0, 1]
        );
        for genus in 1..=5 {
            assert!(poincare_report(genus).unwrap().all_pass());
        }
    }
}
