//! The recursive relation triples of the invariant rings.
//!
//! All families share one recursion, starting from (1, 0, 0):
//!
//! ```text
//! P¹_{r+1} = α P¹_r + r² P²_r
//! P²_{r+1} = (β + c_{r+1}) P¹_r + 2r/(r+1) P³_r
//! P³_{r+1} = γ P¹_r + d_{r+1} P²_r
//! ```
//!
//! with `c = d = 0` for the classical ring, `c_{r+1} = (−1)^{r+1}·8` for
//! Floer cohomology and `c_{r+1} = (−1)^{r+g+1}·8` for quantum cohomology at
//! genus g (`d = 0` in both).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde_json::json;

use crate::algebra::{AlgebraElement, Signature};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationKind {
    Classical,
    Floer,
    Quantum { genus: u32 },
    Generic { c: Vec<Scalar>, d: Vec<Scalar> },
}

impl PresentationKind {
    pub fn name(&self) -> &'static str {
        match self {
            PresentationKind::Classical => "classical",
            PresentationKind::Floer => "floer",
            PresentationKind::Quantum { .. } => "quantum",
            PresentationKind::Generic { .. } => "generic",
        }
    }

    fn step_constants(&self, r: u32) -> (Scalar, Scalar) {
        let eight = |exp: u32| Scalar::from_int(if exp.is_multiple_of(2) { 8 } else { -8 });
        match self {
            PresentationKind::Classical => (Scalar::zero(), Scalar::zero()),
            PresentationKind::Floer => (eight(r + 1), Scalar::zero()),
            PresentationKind::Quantum { genus } => (eight(r + genus + 1), Scalar::zero()),
            PresentationKind::Generic { c, d } => (c[r as usize].clone(), d[r as usize].clone()),
        }
    }

    fn memo_key(&self) -> Option<u8> {
        match self {
            PresentationKind::Classical => Some(0),
            PresentationKind::Floer => Some(1),
            PresentationKind::Quantum { genus } => Some(2 + (genus % 2) as u8),
            PresentationKind::Generic { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationTriple {
    pub kind: PresentationKind,
    pub index: u32,
    pub gens: [AlgebraElement; 3],
}

type Memo = Mutex<HashMap<(u8, u32), Arc<[AlgebraElement; 3]>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn step(kind: &PresentationKind, r: u32, prev: &[AlgebraElement; 3]) -> [AlgebraElement; 3] {
    let ring = Signature::invariant_ring();
    let gen = |n: &str| AlgebraElement::generator(&ring, n).expect("invariant ring generator");
    let (c, d) = kind.step_constants(r);
    let [p1, p2, p3] = prev;
    let r_sq = Scalar::from_int((r * r) as i64);
    let ratio = Scalar::from_ratio(2 * r as i64, r as i64 + 1);
    let beta_c = &gen("β") + &AlgebraElement::constant(&ring, c);
    [
        &(&gen("α") * p1) + &p2.scale(&r_sq),
        &(&beta_c * p1) + &p3.scale(&ratio),
        &(&gen("γ") * p1) + &p2.scale(&d),
    ]
}

fn base() -> [AlgebraElement; 3] {
    let ring = Signature::invariant_ring();
    [AlgebraElement::one(&ring), AlgebraElement::zero(&ring), AlgebraElement::zero(&ring)]
}

fn unroll(kind: &PresentationKind, r: u32) -> [AlgebraElement; 3] {
    let Some(key) = kind.memo_key() else {
        let mut cur = base();
        for k in 0..r {
            cur = step(kind, k, &cur);
        }
        return cur;
    };
    if let Some(hit) = memo().lock().expect("memo lock").get(&(key, r)) {
        return (**hit).clone();
    }
    // Resume from the deepest memoized index below r.
    let (mut k, mut cur) = {
        let table = memo().lock().expect("memo lock");
        (0..r)
            .rev()
            .find_map(|k| table.get(&(key, k)).map(|t| (k, (**t).clone())))
            .unwrap_or((0, base()))
    };
    let mut fresh = Vec::new();
    while k < r {
        cur = step(kind, k, &cur);
        k += 1;
        fresh.push((k, Arc::new(cur.clone())));
    }
    let mut table = memo().lock().expect("memo lock");
    for (k, t) in fresh {
        table.entry((key, k)).or_insert(t);
    }
    cur
}

/// q_r: the classical (graded) relations of H*_I.
pub fn classical_triple(r: u32) -> PresentationTriple {
    PresentationTriple { kind: PresentationKind::Classical, index: r, gens: unroll(&PresentationKind::Classical, r) }
}

/// R_r: the Floer-cohomology relations.
pub fn floer_triple(r: u32) -> PresentationTriple {
    PresentationTriple { kind: PresentationKind::Floer, index: r, gens: unroll(&PresentationKind::Floer, r) }
}

/// Q_r at genus g: the quantum-cohomology relations.
pub fn quantum_triple(r: u32, genus: u32) -> Result<PresentationTriple> {
    if genus == 0 {
        return Err(Error::Genus(0, "quantum presentations need g >= 1"));
    }
    let kind = PresentationKind::Quantum { genus };
    let gens = unroll(&kind, r);
    Ok(PresentationTriple { kind, index: r, gens })
}

/// The recursion with free constants: `c[k-1]`, `d[k-1]` are c_k, d_k.
pub fn generic_triple(r: u32, c: &[Scalar], d: &[Scalar]) -> Result<PresentationTriple> {
    let needed = r as usize;
    for list in [c, d] {
        if list.len() < needed {
            return Err(Error::ParametersTooShort { needed, got: list.len() });
        }
    }
    let kind = PresentationKind::Generic { c: c[..needed].to_vec(), d: d[..needed].to_vec() };
    let gens = unroll(&kind, r);
    Ok(PresentationTriple { kind, index: r, gens })
}

/// Constants c_k = (−1)^{k+g}·8, d_k = 0 for k = 1..=r. With these the
/// generic recursion coincides with [`quantum_triple`].
pub fn quantum_parameters(genus: u32, r: u32) -> (Vec<Scalar>, Vec<Scalar>) {
    let c = (1..=r).map(|k| Scalar::from_int(if (k + genus).is_multiple_of(2) { 8 } else { -8 })).collect();
    (c, vec![Scalar::zero(); r as usize])
}

/// Constants c_k = (−1)^k·8, d_k = 0 reproducing [`floer_triple`].
pub fn floer_parameters(r: u32) -> (Vec<Scalar>, Vec<Scalar>) {
    quantum_parameters(0, r)
}

impl PresentationTriple {
    /// Nominal degrees (2r, 2r+2, 2r+4) of the three entries.
    pub fn nominal_degrees(&self) -> [u32; 3] {
        let r = self.index;
        [2 * r, 2 * r + 2, 2 * r + 4]
    }

    /// The same polynomials read in another generator alphabet (e.g. β̂, γ̂).
    pub fn relabel(&self, target: &Arc<Signature>) -> Result<[AlgebraElement; 3]> {
        let [a, b, c] = &self.gens;
        Ok([a.relabel(target)?, b.relabel(target)?, c.relabel(target)?])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let genus = match &self.kind {
            PresentationKind::Quantum { genus } => Some(*genus),
            _ => None,
        };
        json!({
            "kind": self.kind.name(),
            "genus": genus,
            "r": self.index,
            "P1": self.gens[0].to_json(),
            "P2": self.gens[1].to_json(),
            "P3": self.gens[2].to_json(),
        })
    }
}

impl fmt::Display for PresentationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.gens[0], self.gens[1], self.gens[2])
    }
}

/// Homogeneous components of a mod-4 graded deformation, `components[j]` of
/// degree `top − 4j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSplit {
    pub top: u32,
    pub components: Vec<AlgebraElement>,
}

impl DeformationSplit {
    pub fn leading(&self) -> Option<&AlgebraElement> {
        self.components.first()
    }

    pub fn sum(&self) -> Option<AlgebraElement> {
        let mut it = self.components.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| &acc + c))
    }
}

/// Splits `p` into pieces of degree `top`, `top − 4`, …; any other degree is
/// an error.
pub fn deformation_split(p: &AlgebraElement, top: u32) -> Result<DeformationSplit> {
    let parts: BTreeMap<u32, AlgebraElement> = p.homogeneous_components();
    let mut components = Vec::new();
    for (&degree, part) in parts.iter().rev() {
        if degree > top || !(top - degree).is_multiple_of(4) {
            return Err(Error::NotMod4Graded { degree, top });
        }
        let j = ((top - degree) / 4) as usize;
        if components.len() <= j {
            components.resize(j + 1, AlgebraElement::zero(p.signature()));
        }
        components[j] = part.clone();
    }
    Ok(DeformationSplit { top, components })
}
