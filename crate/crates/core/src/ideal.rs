//! Ideals of ℚ(i)[α, β, γ] by exact linear algebra on a degree truncation.
//!
//! The truncation at cap D is the span of all `m·f` with `f` a generator and
//! `deg m + deg f ≤ D`, row reduced with columns ordered by degree
//! (descending) and then exponent vector (descending). The non-pivot
//! monomials B are candidates for a basis of the quotient. The build is
//! certified when
//!
//! * every monomial of degree in (D − 6, D] is a pivot,
//! * B is closed under division,
//! * the multiplication matrices on span(B) commute, and
//! * every generator evaluated at those matrices kills the class of 1.
//!
//! Then B is a basis of the quotient and the truncation is exactly the
//! ideal's intersection with degrees ≤ D, so reductions are exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Rref, SparseRow};
use crate::cache::IdealStore;
use crate::presentation::{quantum_triple, PresentationTriple};
use crate::report::Report;
use crate::scalar::Scalar;

/// Sparse vector over the standard monomials, by index into B.
pub type QuotientVector = SparseRow;

#[derive(Debug)]
pub struct GradedIdeal {
    sig: Arc<Signature>,
    generators: Vec<AlgebraElement>,
    cap: u32,
    columns: Vec<Monomial>,
    column_index: HashMap<Monomial, usize>,
    rref: Rref,
    standard: Vec<Monomial>,
    standard_index: HashMap<Monomial, usize>,
    /// `mult[v][j]` is the normal form of (variable v)·B[j].
    mult: Vec<Vec<QuotientVector>>,
    nf_memo: Mutex<HashMap<Monomial, QuotientVector>>,
}

/// All exponent vectors of weighted degree ≤ cap, ordered by degree then
/// exponents, both descending.
pub fn monomials_up_to(sig: &Signature, cap: u32) -> Vec<Monomial> {
    let degrees: Vec<u32> = sig.even().iter().map(|g| g.degree).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; degrees.len()];
    fn rec(k: usize, left: u32, degrees: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == degrees.len() {
            out.push(Monomial::new(exps, 0));
            return;
        }
        for e in 0..=left / degrees[k] {
            exps[k] = e;
            rec(k + 1, left - e * degrees[k], degrees, exps, out);
        }
        exps[k] = 0;
    }
    if !degrees.is_empty() && degrees.iter().all(|&d| d > 0) {
        rec(0, cap, &degrees, &mut exps, &mut out);
    }
    out.sort_by(|a, b| sig.degree_of(b).cmp(&sig.degree_of(a)).then_with(|| b.cmp(a)));
    out
}

fn shift(m: &Monomial, var: usize, up: bool) -> Option<Monomial> {
    let mut e = m.exps().to_vec();
    if up {
        e[var] += 1;
    } else {
        e[var] = e[var].checked_sub(1)?;
    }
    Some(Monomial::new(&e, 0))
}

/// `Σ x_j · cols[j]` for sparse vectors.
fn apply(cols: &[QuotientVector], v: &QuotientVector) -> QuotientVector {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, x) in v {
        for (i, c) in &cols[*j] {
            let e = acc.entry(*i).or_insert_with(Scalar::zero);
            *e += &(x * c);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn axpy(acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &QuotientVector) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Scalar::zero);
        *e += &(c * x);
    }
}

impl GradedIdeal {
    /// Builds and certifies the ideal generated by `gens` at cap `cap`.
    pub fn build(gens: &[AlgebraElement], cap: u32) -> Result<Self> {
        let sig = Self::check_generators(gens, cap)?;
        let columns = monomials_up_to(&sig, cap);
        let column_index: HashMap<Monomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let generators: Vec<AlgebraElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();

        let to_row = |p: &AlgebraElement| -> SparseRow {
            let mut row: SparseRow = p.terms().iter().map(|(m, c)| (column_index[m], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            row
        };
        // Rows by generator, lowest multiplier degree first.
        let mut jobs: Vec<(usize, &Monomial)> = Vec::new();
        for (k, g) in generators.iter().enumerate() {
            let top = g.max_degree().unwrap_or(0);
            for m in columns.iter().rev() {
                if sig.degree_of(m) + top <= cap {
                    jobs.push((k, m));
                }
            }
        }
        jobs.sort_by_key(|(k, m)| (sig.degree_of(m), *k));
        let rows: Vec<SparseRow> = jobs
            .par_iter()
            .map(|(k, m)| {
                let mono = AlgebraElement::monomial(&sig, (*m).clone(), Scalar::one());
                to_row(&(&mono * &generators[*k]))
            })
            .collect();
        let mut ech = Echelon::new();
        for row in rows {
            ech.insert(row);
        }
        let rref = ech.into_rref(columns.len());
        Self::assemble(sig, generators, cap, columns, column_index, rref)
    }

    /// Rebuilds from a stored reduced echelon form, re-running the certificate.
    pub fn from_rref(gens: &[AlgebraElement], cap: u32, rref: Rref) -> Result<Self> {
        let sig = Self::check_generators(gens, cap)?;
        let columns = monomials_up_to(&sig, cap);
        if rref.ncols() != columns.len() || !rref.is_canonical() {
            return Err(Error::Cache("stored echelon form has the wrong shape".into()));
        }
        let column_index = columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let generators = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        Self::assemble(sig, generators, cap, columns, column_index, rref)
    }

    fn check_generators(gens: &[AlgebraElement], cap: u32) -> Result<Arc<Signature>> {
        let sig = gens
            .first()
            .map(|g| g.signature().clone())
            .unwrap_or_else(Signature::invariant_ring);
        if !sig.odd().is_empty() {
            return Err(Error::InvalidSignature("ideals live in commutative polynomial rings".into()));
        }
        for g in gens {
            if g.signature() != &sig {
                return Err(Error::SignatureMismatch);
            }
        }
        let needed = gens.iter().filter_map(|g| g.max_degree()).max().unwrap_or(0);
        if cap < needed {
            return Err(Error::CapTooSmall { cap, needed });
        }
        Ok(sig)
    }

    fn assemble(
        sig: Arc<Signature>,
        generators: Vec<AlgebraElement>,
        cap: u32,
        columns: Vec<Monomial>,
        column_index: HashMap<Monomial, usize>,
        rref: Rref,
    ) -> Result<Self> {
        let standard: Vec<Monomial> = {
            let mut b: Vec<Monomial> = (0..columns.len())
                .filter(|&c| !rref.is_pivot(c))
                .map(|c| columns[c].clone())
                .collect();
            b.sort();
            b
        };
        let standard_index: HashMap<Monomial, usize> =
            standard.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut ideal = GradedIdeal {
            sig,
            generators,
            cap,
            columns,
            column_index,
            rref,
            standard,
            standard_index,
            mult: Vec::new(),
            nf_memo: Mutex::new(HashMap::new()),
        };
        ideal.certify()?;
        Ok(ideal)
    }

    /// Reduces a monomial of degree ≤ cap to a vector over B.
    fn reduce_column(&self, m: &Monomial) -> QuotientVector {
        let row = self.rref.reduce(vec![(self.column_index[m], Scalar::one())]);
        let mut v: QuotientVector = row
            .into_iter()
            .map(|(c, x)| (self.standard_index[&self.columns[c]], x))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn certify(&mut self) -> Result<()> {
        let n_vars = self.sig.even().len();
        let max_var = self.sig.even().iter().map(|g| g.degree).max().unwrap_or(0);
        for b in &self.standard {
            let d = self.sig.degree_of(b);
            if d + max_var > self.cap {
                return Err(Error::NotFull(d));
            }
            for v in 0..n_vars {
                if let Some(q) = shift(b, v, false) {
                    if !self.standard_index.contains_key(&q) {
                        return Err(Error::BasisProperty(format!(
                            "standard monomials are not closed under division at {:?}",
                            b.exps()
                        )));
                    }
                }
            }
        }
        if self.standard.is_empty() {
            // 1 is a pivot: the ideal is the whole ring.
            return Ok(());
        }
        let mult: Vec<Vec<QuotientVector>> = (0..n_vars)
            .map(|v| {
                self.standard
                    .iter()
                    .map(|b| self.reduce_column(&shift(b, v, true).expect("raise")))
                    .collect()
            })
            .collect();
        for x in 0..n_vars {
            for y in x + 1..n_vars {
                for j in 0..self.standard.len() {
                    let e = vec![(j, Scalar::one())];
                    if apply(&mult[x], &apply(&mult[y], &e)) != apply(&mult[y], &apply(&mult[x], &e)) {
                        return Err(Error::BasisProperty("multiplication matrices do not commute".into()));
                    }
                }
            }
        }
        self.mult = mult;
        for g in &self.generators {
            if !self.nf_vector(g).is_empty() {
                return Err(Error::BasisProperty("a generator does not vanish in the quotient".into()));
            }
        }
        Ok(())
    }

    fn nf_monomial(&self, m: &Monomial) -> QuotientVector {
        if self.standard.is_empty() {
            return Vec::new();
        }
        if let Some(v) = self.nf_memo.lock().expect("memo lock").get(m) {
            return v.clone();
        }
        let v = match m.exps().iter().position(|&e| e > 0) {
            None => vec![(self.standard_index[m], Scalar::one())],
            Some(var) => {
                let lower = shift(m, var, false).expect("positive exponent");
                apply(&self.mult[var], &self.nf_monomial(&lower))
            }
        };
        self.nf_memo.lock().expect("memo lock").insert(m.clone(), v.clone());
        v
    }

    /// Class of `p` in the quotient, as a vector over the standard monomials.
    /// Valid in every degree, not only up to the cap.
    pub fn nf_vector(&self, p: &AlgebraElement) -> QuotientVector {
        let mut acc = BTreeMap::new();
        for (m, c) in p.terms() {
            axpy(&mut acc, c, &self.nf_monomial(m));
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// The certified monomial basis of the quotient.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn is_whole_ring(&self) -> bool {
        self.standard.is_empty()
    }

    /// Echelon rows grouped by the degree of their leading monomial.
    pub fn spans(&self) -> BTreeMap<u32, Vec<SparseRow>> {
        let mut out: BTreeMap<u32, Vec<SparseRow>> = BTreeMap::new();
        for row in self.rref.rows() {
            out.entry(self.sig.degree_of(&self.columns[row[0].0])).or_default().push(row.clone());
        }
        out
    }

    /// Dimension of the leading-form space in degree `d`.
    pub fn span_dim(&self, d: u32) -> usize {
        self.spans().get(&d).map_or(0, Vec::len)
    }

    pub fn element_to_row(&self, p: &AlgebraElement) -> Result<SparseRow> {
        let mut row = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let col = self
                .column_index
                .get(m)
                .ok_or(Error::CapTooSmall { cap: self.cap, needed: self.sig.degree_of(m) })?;
            row.push((*col, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        Ok(row)
    }

    pub fn row_to_element(&self, row: &SparseRow) -> AlgebraElement {
        AlgebraElement::from_terms(&self.sig, row.iter().map(|(c, x)| (self.columns[*c].clone(), x.clone())))
    }

    /// Remainder of `p` after reduction by the truncated span; needs deg p ≤ cap.
    pub fn reduce(&self, p: &AlgebraElement) -> Result<AlgebraElement> {
        let row = self.rref.reduce(self.element_to_row(p)?);
        Ok(self.row_to_element(&row))
    }

    pub fn contains(&self, p: &AlgebraElement) -> Result<bool> {
        if p.signature() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.nf_vector(p).is_empty())
    }

    /// Coefficients of `p` over α^aβ^bγ^c, a+b+c < r, modulo the ideal.
    pub fn normal_form(&self, p: &AlgebraElement, r: u32) -> Result<NormalForm> {
        if p.signature() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let basis = QuotientBasis::new(&self.sig, r);
        let n = self.standard.len();
        if basis.len() != n {
            return Err(Error::BasisProperty(format!(
                "quotient has dimension {n}, basis candidate has {} monomials",
                basis.len()
            )));
        }
        // matrix[i][j] = coordinate i of NF(basis_j).
        let mut matrix = vec![vec![Scalar::zero(); n]; n];
        for (j, m) in basis.monomials().iter().enumerate() {
            for (i, c) in self.nf_monomial(m) {
                matrix[i][j] = c;
            }
        }
        let mut target = vec![Scalar::zero(); n];
        for (i, c) in self.nf_vector(p) {
            target[i] = c;
        }
        let coeffs = linalg::solve_dense(&matrix, &target)
            .ok_or_else(|| Error::BasisProperty("basis monomials are dependent modulo the ideal".into()))?;
        Ok(NormalForm { sig: self.sig.clone(), basis, coeffs })
    }

    /// Dimension of the quotient, checking that it vanishes above 6(r−1).
    pub fn quotient_dim(&self, r: u32) -> Result<usize> {
        let top = 6 * r.saturating_sub(1);
        if let Some(b) = self.standard.iter().find(|b| self.sig.degree_of(b) > top) {
            return Err(Error::NotFull(self.sig.degree_of(b)));
        }
        if r > 0 && self.cap < top + 6 {
            return Err(Error::CapTooSmall { cap: self.cap, needed: top + 6 });
        }
        Ok(self.standard.len())
    }
}

/// Equality of two certified ideals in the same ring and at the same cap.
pub fn ideal_equal(a: &GradedIdeal, b: &GradedIdeal) -> Result<bool> {
    if a.cap != b.cap {
        return Err(Error::CapMismatch(a.cap, b.cap));
    }
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(a.rref == b.rref)
}

/// The monomials α^aβ^bγ^c with a+b+c < r, in ascending monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    r: u32,
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn new(sig: &Signature, r: u32) -> Self {
        let n = sig.even().len();
        let mut monomials = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(k: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if k == exps.len() {
                out.push(Monomial::new(exps, 0));
                return;
            }
            for e in 0..=left {
                exps[k] = e;
                rec(k + 1, left - e, exps, out);
            }
            exps[k] = 0;
        }
        if r > 0 {
            rec(0, r - 1, &mut exps, &mut monomials);
        }
        monomials.sort();
        QuotientBasis { r, monomials }
    }

    pub fn index(&self) -> u32 {
        self.r
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    sig: Arc<Signature>,
    pub basis: QuotientBasis,
    pub coeffs: Vec<Scalar>,
}

impl NormalForm {
    pub fn to_element(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            &self.sig,
            self.basis.monomials().iter().cloned().zip(self.coeffs.iter().cloned()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Default cap for the ideal of a triple of index r: top degree of the
/// quotient plus the largest generator degree.
pub fn default_cap(r: u32) -> u32 {
    6 * r.max(1)
}

pub fn build_triple(t: &PresentationTriple) -> Result<GradedIdeal> {
    GradedIdeal::build(&t.gens, default_cap(t.index))
}

/// γ·J_k ⊂ J_{k+1} ⊂ J_k for k = 0..g−1, generator by generator.
pub fn lemma17_check(genus: u32, store: &IdealStore) -> Result<Report> {
    if genus < 2 {
        return Err(Error::Genus(genus, "the chain is checked for g >= 2"));
    }
    let ring = Signature::invariant_ring();
    let gamma = AlgebraElement::generator(&ring, "γ")?;
    let results: Vec<Result<Vec<(String, bool)>>> = (0..genus)
        .into_par_iter()
        .map(|k| {
            let jk = quantum_triple(k, genus)?;
            let jk1 = quantum_triple(k + 1, genus)?;
            let ideal_k = store.ideal(&jk)?;
            let ideal_k1 = store.ideal(&jk1)?;
            let mut out = Vec::new();
            for (j, f) in jk.gens.iter().enumerate() {
                let p = &gamma * f;
                out.push((format!("γ·Q_{k}^{} in J_{}", j + 1, k + 1), ideal_k1.contains(&p)?));
            }
            for (j, f) in jk1.gens.iter().enumerate() {
                out.push((format!("Q_{}^{} in J_{k}", k + 1, j + 1), ideal_k.contains(f)?));
            }
            Ok(out)
        })
        .collect();
    let mut report = Report::new("lemma17", genus);
    for r in results {
        for (name, pass) in r? {
            report.check(name, pass, "");
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{classical_triple, floer_triple};

    fn ring() -> Arc<Signature> {
        Signature::invariant_ring()
    }

    fn g(n: &str) -> AlgebraElement {
        AlgebraElement::generator(&ring(), n).unwrap()
    }

    fn k(n: i64) -> AlgebraElement {
        AlgebraElement::from_int(&ring(), n)
    }

    fn binom3(n: u32) -> usize {
        ((n + 2) * (n + 1) * n / 6) as usize
    }

    #[test]
    fn column_order() {
        let cols = monomials_up_to(&ring(), 6);
        let shown: Vec<Vec<u32>> = cols.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            shown,
            vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1], vec![2, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]
        );
    }

    #[test]
    fn floer_one() {
        let i = GradedIdeal::build(&floer_triple(1).gens, 12).unwrap();
        assert!(i.contains(&(&g("β") - &k(8))).unwrap());
        assert!(!i.contains(&k(1)).unwrap());
        assert_eq!(i.quotient_dim(1).unwrap(), 1);
        assert_eq!(i.span_dim(2), 1);
        let nf = i.normal_form(&g("β"), 1).unwrap();
        assert_eq!(nf.to_element(), k(8));
    }

    #[test]
    fn classical_two() {
        let q = classical_triple(2);
        let i = GradedIdeal::build(&q.gens, 24).unwrap();
        assert_eq!(i.span_dim(4), 1);
        assert_eq!(i.quotient_dim(2).unwrap(), 4);
        assert_eq!(i.normal_form(&g("α"), 2).unwrap().to_element(), g("α"));
        for p in &q.gens {
            assert!(i.normal_form(p, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn whole_ring() {
        let i = GradedIdeal::build(&quantum_triple(0, 3).unwrap().gens, 6).unwrap();
        assert!(i.is_whole_ring());
        assert!(i.contains(&g("γ")).unwrap());
        assert_eq!(i.quotient_dim(0).unwrap(), 0);
    }

    #[test]
    fn cap_too_small() {
        assert!(matches!(
            GradedIdeal::build(&classical_triple(3).gens, 8),
            Err(Error::CapTooSmall { cap: 8, needed: 10 })
        ));
    }

    #[test]
    fn dims_match_monomial_count() {
        for r in 1..=4 {
            for t in [classical_triple(r), floer_triple(r), quantum_triple(r, 3).unwrap()] {
                let i = build_triple(&t).unwrap();
                assert_eq!(i.quotient_dim(r).unwrap(), binom3(r));
            }
        }
    }

    #[test]
    fn equality_and_difference() {
        let a = build_triple(&floer_triple(3)).unwrap();
        let b = build_triple(&floer_triple(3)).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        let c = build_triple(&quantum_triple(3, 3).unwrap()).unwrap();
        assert!(!ideal_equal(&a, &c).unwrap());
        let d = GradedIdeal::build(&floer_triple(3).gens, 24).unwrap();
        assert!(matches!(ideal_equal(&a, &d), Err(Error::CapMismatch(18, 24))));
    }

    #[test]
    fn membership_matches_truncated_reduction() {
        let i = build_triple(&quantum_triple(3, 3).unwrap()).unwrap();
        for m in monomials_up_to(&ring(), 12) {
            let p = AlgebraElement::monomial(&ring(), m, Scalar::one());
            let nf = i.normal_form(&p, 3).unwrap();
            let diff = &p - &nf.to_element();
            assert!(i.contains(&diff).unwrap());
            assert!(i.reduce(&diff).unwrap().is_zero());
            assert_eq!(i.contains(&p).unwrap(), nf.is_zero());
        }
    }

    #[test]
    fn certificate_rejects_infinite_quotient() {
        assert!(GradedIdeal::build(&[g("α")], 12).is_err());
    }

    #[test]
    fn chain_inclusions() {
        let store = IdealStore::default();
        for genus in 2..=3 {
            let report = lemma17_check(genus, &store).unwrap();
            assert!(report.all_pass(), "{report}");
            assert_eq!(report.checks.len(), 6 * genus as usize);
        }
    }

    #[test]
    fn quotient_basis_counts() {
        for r in 0..=6 {
            let b = QuotientBasis::new(&ring(), r);
            assert_eq!(b.len(), binom3(r));
            if r > 0 {
                let top = b.monomials().iter().map(|m| ring().degree_of(m)).max().unwrap();
                assert_eq!(top, 6 * (r - 1));
            }
        }
    }
}
