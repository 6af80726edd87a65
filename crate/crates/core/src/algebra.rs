//! Sparse elements of graded-commutative algebras.
//!
//! An algebra is described by a [`Signature`]: commuting generators of even
//! degree and anticommuting generators of odd degree. A [`Monomial`] stores an
//! exponent vector for the former and a bit set for the latter; the sign
//! coming from reordering anticommuting factors is folded into the
//! coefficient, so a monomial's odd part is always in ascending order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Generator list of a graded-commutative algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    even: Vec<Generator>,
    odd: Vec<Generator>,
}

/// Position of a generator inside its signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenRef {
    Even(usize),
    Odd(usize),
}

pub const MAX_ODD: usize = 64;

impl Signature {
    pub fn new(even: &[(&str, u32)], odd: &[(&str, u32)]) -> Result<Arc<Self>> {
        let even: Vec<Generator> = even
            .iter()
            .map(|&(n, d)| Generator { name: n.to_string(), degree: d })
            .collect();
        let odd: Vec<Generator> = odd
            .iter()
            .map(|&(n, d)| Generator { name: n.to_string(), degree: d })
            .collect();
        Self::from_generators(even, odd)
    }

    pub fn from_generators(even: Vec<Generator>, odd: Vec<Generator>) -> Result<Arc<Self>> {
        if odd.len() > MAX_ODD {
            return Err(Error::InvalidSignature(format!(
                "at most {MAX_ODD} anticommuting generators"
            )));
        }
        if let Some(g) = even.iter().find(|g| g.degree % 2 != 0) {
            return Err(Error::InvalidSignature(format!("{} must have even degree", g.name)));
        }
        if let Some(g) = odd.iter().find(|g| g.degree % 2 == 0) {
            return Err(Error::InvalidSignature(format!("{} must have odd degree", g.name)));
        }
        let mut names: Vec<&str> = even.iter().chain(odd.iter()).map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSignature("generator names must be unique".into()));
        }
        Ok(Arc::new(Signature { even, odd }))
    }

    /// ℚ(i)[α, β, γ] with degrees 2, 4, 6.
    pub fn invariant_ring() -> Arc<Self> {
        static RING: OnceLock<Arc<Signature>> = OnceLock::new();
        RING.get_or_init(|| Self::new(&[("α", 2), ("β", 4), ("γ", 6)], &[]).expect("static signature"))
            .clone()
    }

    /// ℚ(i)[α, β̂, γ̂], the corrected generators of the low-genus examples.
    pub fn hatted_ring() -> Arc<Self> {
        static RING: OnceLock<Arc<Signature>> = OnceLock::new();
        RING.get_or_init(|| Self::new(&[("α", 2), ("β̂", 4), ("γ̂", 6)], &[]).expect("static signature"))
            .clone()
    }

    /// ℚ(i)[α, β̂, γ], genus 1 only corrects β.
    pub fn beta_hatted_ring() -> Arc<Self> {
        static RING: OnceLock<Arc<Signature>> = OnceLock::new();
        RING.get_or_init(|| Self::new(&[("α", 2), ("β̂", 4), ("γ", 6)], &[]).expect("static signature"))
            .clone()
    }

    /// Λ(φ₁, …, φₙ) with every φ of degree 1.
    pub fn exterior(n: usize) -> Result<Arc<Self>> {
        let odd: Vec<Generator> = (1..=n)
            .map(|i| Generator { name: format!("φ{i}"), degree: 1 })
            .collect();
        Self::from_generators(Vec::new(), odd)
    }

    /// Λ(φ₁, …, φₙ) ⊗ ℚ[h] with deg h = 2.
    pub fn exterior_with_h(n: usize) -> Result<Arc<Self>> {
        let odd: Vec<Generator> = (1..=n)
            .map(|i| Generator { name: format!("φ{i}"), degree: 1 })
            .collect();
        Self::from_generators(vec![Generator { name: "h".into(), degree: 2 }], odd)
    }

    pub fn even(&self) -> &[Generator] {
        &self.even
    }

    pub fn odd(&self) -> &[Generator] {
        &self.odd
    }

    pub fn lookup(&self, name: &str) -> Option<GenRef> {
        if let Some(i) = self.even.iter().position(|g| g.name == name) {
            return Some(GenRef::Even(i));
        }
        self.odd.iter().position(|g| g.name == name).map(GenRef::Odd)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        let even: u32 = m
            .exps
            .iter()
            .zip(&self.even)
            .map(|(e, g)| e * g.degree)
            .sum();
        let odd: u32 = m.odd_indices().map(|i| self.odd[i].degree).sum();
        even + odd
    }

    /// Same generator shape (counts and degrees), names aside.
    pub fn same_shape(&self, other: &Signature) -> bool {
        self.even.len() == other.even.len()
            && self.odd.len() == other.odd.len()
            && self.even.iter().zip(&other.even).all(|(a, b)| a.degree == b.degree)
            && self.odd.iter().zip(&other.odd).all(|(a, b)| a.degree == b.degree)
    }
}

fn same_sig(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Commuting exponents plus an ascending set of anticommuting generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
    odd: u64,
}

impl Monomial {
    pub fn new(exps: &[u32], odd: u64) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), odd }
    }

    pub fn unit(n_even: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, n_even), odd: 0 }
    }

    pub fn from_odd_indices(n_even: usize, indices: &[usize]) -> Option<(Self, bool)> {
        // Returns the sorted monomial and whether sorting flipped the sign.
        let mut mask = 0u64;
        let mut negative = false;
        for &i in indices {
            let bit = 1u64 << i;
            if mask & bit != 0 {
                return None;
            }
            if (mask >> i).count_ones() % 2 == 1 {
                negative = !negative;
            }
            mask |= bit;
        }
        Some((Monomial { exps: SmallVec::from_elem(0, n_even), odd: mask }, negative))
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.odd;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    /// Product with the reordering sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        // Moving each odd factor of `other` left past the larger odd factors
        // of `self` costs one transposition apiece.
        let mut swaps = 0u32;
        let mut rest = other.odd;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j >= 63 { 0 } else { self.odd >> (j + 1) };
            swaps += above.count_ones();
            rest &= rest - 1;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((Monomial { exps, odd: self.odd | other.odd }, swaps % 2 == 1))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.odd & !other.odd == 0 && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    /// Lexicographic on the exponent vector, then on the ascending list of
    /// odd indices.
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps).then_with(|| {
            let mut a = self.odd_indices();
            let mut b = other.odd_indices();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some(x), Some(y)) if x != y => return x.cmp(&y),
                    _ => {}
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse element of the algebra described by its signature.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        AlgebraElement { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(sig: &Arc<Signature>, c: Scalar) -> Self {
        let mut e = Self::zero(sig);
        if !c.is_zero() {
            e.terms.insert(Monomial::unit(sig.even.len()), c);
        }
        e
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, Scalar::one())
    }

    pub fn from_int(sig: &Arc<Signature>, n: i64) -> Self {
        Self::constant(sig, Scalar::from_int(n))
    }

    pub fn generator(sig: &Arc<Signature>, name: &str) -> Result<Self> {
        match sig.lookup(name) {
            Some(r) => Ok(Self::gen_ref(sig, r)),
            None => Err(Error::UnknownGenerator(name.to_string())),
        }
    }

    pub fn gen_ref(sig: &Arc<Signature>, r: GenRef) -> Self {
        let mut m = Monomial::unit(sig.even.len());
        match r {
            GenRef::Even(i) => m.exps[i] = 1,
            GenRef::Odd(i) => m.odd = 1 << i,
        }
        Self::monomial(sig, m, Scalar::one())
    }

    pub fn monomial(sig: &Arc<Signature>, m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(sig);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// Builds an element from arbitrary terms, merging duplicates.
    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Self::zero(sig);
        for (m, c) in terms {
            e.add_term(m, &c);
        }
        e
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_sig(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        AlgebraElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        self.sig.degree_of(m)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.sig.degree_of(m)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.sig.degree_of(m)).min()
    }

    /// The terms of total degree exactly `d`.
    pub fn grade_component(&self, d: u32) -> Self {
        AlgebraElement {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.sig.degree_of(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// All nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.sig.degree_of(m))
                .or_insert_with(|| Self::zero(&self.sig))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Evaluates the algebra morphism sending each generator to its image.
    ///
    /// Generators missing from `images` map to themselves, which requires the
    /// target signature to contain a generator of the same name. Images of
    /// commuting generators must have only even-degree terms and images of
    /// anticommuting ones only odd-degree terms.
    pub fn substitute(&self, images: &BTreeMap<String, AlgebraElement>, target: &Arc<Signature>) -> Result<Self> {
        let mut even_imgs = Vec::with_capacity(self.sig.even.len());
        for g in &self.sig.even {
            even_imgs.push(self.image_of(g, images, target, 0)?);
        }
        let mut odd_imgs = Vec::with_capacity(self.sig.odd.len());
        for g in &self.sig.odd {
            odd_imgs.push(self.image_of(g, images, target, 1)?);
        }
        // Powers are reused across terms.
        let mut powers: Vec<Vec<AlgebraElement>> = even_imgs.iter().map(|e| vec![Self::one(target), e.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &even_imgs[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            for i in m.odd_indices() {
                acc = &acc * &odd_imgs[i];
            }
            for (tm, tc) in acc.terms {
                out.add_term(tm, &tc);
            }
        }
        Ok(out)
    }

    fn image_of(
        &self,
        g: &Generator,
        images: &BTreeMap<String, AlgebraElement>,
        target: &Arc<Signature>,
        parity: u32,
    ) -> Result<AlgebraElement> {
        let img = match images.get(&g.name) {
            Some(img) => {
                if !same_sig(img.signature(), target) {
                    return Err(Error::SignatureMismatch);
                }
                img.clone()
            }
            None => Self::generator(target, &g.name)?,
        };
        if img.terms.keys().any(|m| target.degree_of(m) % 2 != parity) {
            return Err(Error::ParityViolation { name: g.name.clone() });
        }
        Ok(img)
    }

    /// Reinterprets the element in a signature with the same shape, e.g. to
    /// rename β, γ to β̂, γ̂.
    pub fn relabel(&self, target: &Arc<Signature>) -> Result<Self> {
        if !self.sig.same_shape(target) {
            return Err(Error::SignatureMismatch);
        }
        Ok(AlgebraElement { sig: target.clone(), terms: self.terms.clone() })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                monomial: MonomialRepr {
                    exp: m.exps.to_vec(),
                    odd: m.odd_indices().map(|i| i + 1).collect(),
                },
                coef: c.clone(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(sig: &Arc<Signature>, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermRepr> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero(sig);
        for t in terms {
            if t.monomial.exp.len() != sig.even.len() {
                return Err(Error::Parse("exponent vector has the wrong length".into()));
            }
            let idx: Vec<usize> = t.monomial.odd.iter().map(|&i| i.wrapping_sub(1)).collect();
            if idx.iter().any(|&i| i >= sig.odd.len()) {
                return Err(Error::Parse("odd generator index out of range".into()));
            }
            let Some((mut m, negative)) = Monomial::from_odd_indices(sig.even.len(), &idx) else {
                continue;
            };
            m.exps = SmallVec::from_slice(&t.monomial.exp);
            out.add_term(m, &if negative { -t.coef } else { t.coef });
        }
        Ok(out)
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (e, g) in m.exps.iter().zip(&self.sig.even) {
            match e {
                0 => {}
                1 => s.push_str(&g.name),
                _ => {
                    s.push_str(&g.name);
                    s.push_str(&superscript(*e));
                }
            }
        }
        for i in m.odd_indices() {
            s.push_str(&self.sig.odd[i].name);
        }
        s
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    exp: Vec<u32>,
    odd: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: MonomialRepr,
    coef: Scalar,
}

impl fmt::Display for AlgebraElement {
    /// Terms in descending canonical order, e.g. `α² + β - 8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = self.fmt_monomial(m);
            let (negative, mag) = if c.is_real() && c.re() < &num_rational::BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else if mag.is_real() {
                format!("{mag}{mono}")
            } else {
                format!("({mag}){mono}")
            };
            match (first, negative) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator forms panic on a signature mismatch; use the `checked_*` methods
// when operands may come from different algebras.
impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("signature mismatch in +")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("signature mismatch in -")
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("signature mismatch in *")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Signature> {
        Signature::invariant_ring()
    }

    fn gen(sig: &Arc<Signature>, n: &str) -> AlgebraElement {
        AlgebraElement::generator(sig, n).unwrap()
    }

    #[test]
    fn additive_inverse_and_doubling() {
        let r = ring();
        let a = gen(&r, "α");
        assert!((&a + &(-&a)).is_zero());
        let lam = Signature::exterior(4).unwrap();
        let p1 = gen(&lam, "φ1");
        assert_eq!(&p1 + &p1, p1.scale(&Scalar::from_int(2)));
        let b = gen(&r, "β");
        let eight = AlgebraElement::from_int(&r, 8);
        assert_eq!(&(&b - &eight) + &eight, b);
    }

    #[test]
    fn anticommutation_and_odd_square() {
        let lam = Signature::exterior(4).unwrap();
        let (p1, p2, p3) = (gen(&lam, "φ1"), gen(&lam, "φ2"), gen(&lam, "φ3"));
        assert!((&(&p1 * &p2) + &(&p2 * &p1)).is_zero());
        assert!((&p1 * &p1).is_zero());
        // (φ1φ3)φ2: sorting (1,3,2) takes one transposition.
        let lhs = &(&p1 * &p3) * &p2;
        let rhs = -(&(&p1 * &p2) * &p3);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "-φ1φ2φ3");
    }

    #[test]
    fn grade_components() {
        let r = ring();
        let (a, b, c) = (gen(&r, "α"), gen(&r, "β"), gen(&r, "γ"));
        assert_eq!((&a + &b).grade_component(4), b);
        let abc = &(&a * &b) * &c;
        assert_eq!(abc.grade_component(12), abc);
        let lam = Signature::exterior(4).unwrap();
        let omega = &(&gen(&lam, "φ1") * &gen(&lam, "φ3")) + &(&gen(&lam, "φ2") * &gen(&lam, "φ4"));
        let w2 = &omega * &omega;
        assert_eq!(w2.grade_component(4), w2);
    }

    #[test]
    fn substitution_examples() {
        let r = ring();
        let b = gen(&r, "β");
        let eight = AlgebraElement::from_int(&r, 8);
        let mut imgs = BTreeMap::new();
        imgs.insert("β".to_string(), -&b);
        let out = (&b - &eight).substitute(&imgs, &r).unwrap();
        assert_eq!(out, &(-&b) - &eight);

        let a = gen(&r, "α");
        let mut imgs = BTreeMap::new();
        imgs.insert("α".to_string(), a.scale(&Scalar::i()));
        assert_eq!((&a * &a).substitute(&imgs, &r).unwrap(), -(&a * &a));

        let c = gen(&r, "γ");
        let mut imgs = BTreeMap::new();
        imgs.insert("γ".to_string(), c.scale(&Scalar::i_pow(3)));
        assert_eq!(c.substitute(&imgs, &r).unwrap(), c.scale(&-Scalar::i()));
    }

    #[test]
    fn substitution_rejects_parity_violation() {
        let lam = Signature::exterior(2).unwrap();
        let p1 = gen(&lam, "φ1");
        let mut imgs = BTreeMap::new();
        imgs.insert("φ1".to_string(), &p1 * &gen(&lam, "φ2"));
        assert!(matches!(p1.substitute(&imgs, &lam), Err(Error::ParityViolation { .. })));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = gen(&ring(), "α");
        let p = gen(&Signature::exterior(2).unwrap(), "φ1");
        assert_eq!(a.checked_add(&p), Err(Error::SignatureMismatch));
        assert_eq!(a.checked_mul(&p), Err(Error::SignatureMismatch));
    }

    #[test]
    fn invalid_signatures() {
        assert!(Signature::new(&[("x", 3)], &[]).is_err());
        assert!(Signature::new(&[], &[("y", 2)]).is_err());
        assert!(Signature::new(&[("x", 2)], &[("x", 1)]).is_err());
    }

    #[test]
    fn json_layout() {
        let lam = Signature::exterior_with_h(2).unwrap();
        let e = &gen(&lam, "h") * &gen(&lam, "φ2");
        let v = e.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"coef":{"im":"0/1","re":"1/1"},"monomial":{"exp":[1],"odd":[2]}}]"#
        );
        assert_eq!(AlgebraElement::from_json(&lam, &v).unwrap(), e);
    }

    #[test]
    fn display_descending() {
        let r = ring();
        let (a, b) = (gen(&r, "α"), gen(&r, "β"));
        let p = &(&(&a * &a) + &b) - &AlgebraElement::from_int(&r, 8);
        assert_eq!(p.to_string(), "α² + β - 8");
    }
}
