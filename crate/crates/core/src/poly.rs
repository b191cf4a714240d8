//! Multivariate polynomials, Buchberger's algorithm, and quotient rings.
//!
//! A single monomial order is used throughout: graded reverse lexicographic
//! where the *lowest*-index variable is the smallest one, so `y2 > y1` and the
//! standard monomials of the G-fat point come out as `1, y1, …, yq, y1^2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Exponent vector, ordered by [`MonomialOrder::GrevlexThenIndex`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevlexThenIndex,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power of one variable, that variable.
    pub fn pure_power_of(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    /// All monomials of total degree `d` in `nvars` variables, ascending.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur.push(left);
                out.push(Monomial(cur.clone()));
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(nvars, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(nvars, 0, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{e}", vars[i]) })
            .collect();
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    // smaller exponent in the smallest variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over a [`Field`] in a fixed, named list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, vars: Arc<[String]>) -> MultiPoly {
        MultiPoly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, vars: Arc<[String]>, c: Scalar) -> MultiPoly {
        let n = vars.len();
        MultiPoly::term(field, vars, Monomial::one(n), c)
    }

    pub fn term(field: Field, vars: Arc<[String]>, m: Monomial, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(field: Field, vars: Arc<[String]>, i: usize) -> MultiPoly {
        let n = vars.len();
        MultiPoly::term(field, vars, Monomial::var(n, i), field.one())
    }

    pub fn from_terms(field: Field, vars: Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> MultiPoly {
        let mut p = MultiPoly::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.vars != other.vars {
            return Err(Error::FieldMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.vars.clone());
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.vars.clone());
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(other)?;
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.vars.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of highest degree.
    pub fn top_form(&self) -> MultiPoly {
        match self.total_degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch("evaluation point".into()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `value` for variable `i`, keeping the variable list.
    pub fn substitute(&self, i: usize, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0);
            out.add_term(Monomial(e), &(c * &value.pow(k)));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            let mag = match &mag {
                Scalar::Modular { value, .. } => value.to_string(),
                other => other.to_string(),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.format(&self.vars))?;
            } else {
                write!(f, "{mag}*{}", m.format(&self.vars))?;
            }
        }
        Ok(())
    }
}

fn check_ring(gens: &[MultiPoly]) -> Result<()> {
    for g in gens.iter().skip(1) {
        gens[0].same_ring(g)?;
    }
    Ok(())
}

/// Full reduction of `f` by `divisors`: every term of the result is
/// divisible by no leading monomial.
fn reduce(f: &MultiPoly, divisors: &[MultiPoly]) -> MultiPoly {
    let mut rem = MultiPoly::zero(f.field, f.vars.clone());
    let mut p = f.clone();
    while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let div = divisors
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match div {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let factor = &c * &g.leading_coeff().unwrap().inv().unwrap();
                p = p.sub(&g.mul_term(&lm.quotient(&m), &factor)).expect("same ring");
            }
            None => {
                p.terms.remove(&m);
                rem.terms.insert(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient(&l), &f.leading_coeff().unwrap().inv().unwrap());
    let b = g.mul_term(&lg.quotient(&l), &g.leading_coeff().unwrap().inv().unwrap());
    a.sub(&b).expect("same ring")
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by leading monomial ascending. The unit ideal gives `[1]`.
pub fn groebner_basis(gens: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    check_ring(gens)?;
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        done.insert((i, j));
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        // chain criterion: some k whose pairs with i and j are both handled
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.leading_monomial().unwrap().is_one() {
            basis = vec![r];
            break;
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    Ok(interreduce(basis))
}

fn interreduce(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let g = &minimal[i];
            let lm = g.leading_monomial().unwrap().clone();
            let lc = g.leading_coeff().unwrap().clone();
            let tail = MultiPoly {
                terms: g.terms.iter().filter(|(m, _)| **m != lm).map(|(m, c)| (m.clone(), c.clone())).collect(),
                ..g.clone()
            };
            let mut r = reduce(&tail, &others);
            r.add_term(lm, &lc);
            r.monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// Remainder of `f` on division by the Gröbner basis `gb`.
pub fn normal_form(f: &MultiPoly, gb: &[MultiPoly]) -> Result<MultiPoly> {
    if let Some(g) = gb.first() {
        f.same_ring(g)?;
    }
    Ok(reduce(f, gb))
}

/// Monomials outside the leading-term ideal of `gb`, ascending.
pub fn standard_monomials(gb: &[MultiPoly], nvars: usize, cap: usize) -> Result<Vec<Monomial>> {
    let leads: Vec<&Monomial> = gb.iter().filter_map(MultiPoly::leading_monomial).collect();
    if leads.iter().any(|m| m.is_one()) {
        return Ok(vec![]);
    }
    for v in 0..nvars {
        if !leads.iter().any(|m| m.pure_power_of() == Some(v)) {
            return Err(Error::InfiniteDimensional { cap });
        }
    }
    let mut out = Vec::new();
    for d in 0.. {
        let layer: Vec<Monomial> = Monomial::of_degree(nvars, d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        if layer.is_empty() {
            break;
        }
        out.extend(layer);
        if out.len() > cap {
            return Err(Error::InfiniteDimensional { cap });
        }
    }
    Ok(out)
}

/// Default cap on the quotient dimension.
pub const DEFAULT_CAP: usize = 4096;

/// A quotient ring `k[vars]/I` realized on its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub gb: Vec<MultiPoly>,
    pub basis: Vec<Monomial>,
    pub algebra: FiniteAlgebra,
}

impl Quotient {
    pub fn new(field: Field, vars: Arc<[String]>, gens: &[MultiPoly]) -> Result<Quotient> {
        let gb = groebner_basis(gens)?;
        let basis = standard_monomials(&gb, vars.len(), DEFAULT_CAP)?;
        if basis.is_empty() {
            return Err(Error::BadParameter("the relations generate the unit ideal".into()));
        }
        let d = basis.len();
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut c = vec![field.zero(); d * d * d];
        for i in 0..d {
            for j in i..d {
                let prod = MultiPoly::term(field, vars.clone(), basis[i].mul(&basis[j]), field.one());
                let nf = reduce(&prod, &gb);
                for (m, coef) in nf.terms() {
                    let k = index[m];
                    c[(i * d + j) * d + k] = coef.clone();
                    c[(j * d + i) * d + k] = coef.clone();
                }
            }
        }
        let labels = basis.iter().map(|m| m.format(&vars)).collect();
        let unit_idx = index[&Monomial::one(vars.len())];
        let unit = crate::linalg::unit_vector(field, d, unit_idx);
        let algebra = FiniteAlgebra::from_constants(field, labels, c, Some(unit))?;
        Ok(Quotient { gb, basis, algebra })
    }

    /// Coordinates of the class of `f` in the standard-monomial basis.
    pub fn coordinates(&self, f: &MultiPoly) -> Result<Vector> {
        let nf = normal_form(f, &self.gb)?;
        let mut v = vec![self.algebra.field().zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let i = self.basis.iter().position(|b| b == m).expect("normal form is standard");
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }
}

/// Compiles a finite-dimensional quotient presentation into an algebra.
pub fn quotient_algebra(gens: &[MultiPoly]) -> Result<FiniteAlgebra> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InfiniteDimensional { cap: DEFAULT_CAP })?;
    Ok(Quotient::new(first.field(), first.vars().clone(), gens)?.algebra)
}

/// The special fiber of the degeneration `t·Z` (t → 0) of a finite set of
/// points `Z = V(gens)`, as the ideal of top-degree forms.
#[derive(Clone, Debug)]
pub struct FlatLimit {
    /// Homogeneous spanning set, grouped by degree ascending.
    pub generators: Vec<MultiPoly>,
    /// Hilbert function of the limit, degrees `0..=bound`.
    pub hilbert: Vec<usize>,
    pub unit_ideal: bool,
}

/// Degree-by-degree computation of the top-form ideal of `⟨gens⟩` up to
/// `degree_bound`, by row reduction on the graded pieces of `I_{≤ bound}`.
pub fn flat_limit_ideal(gens: &[MultiPoly], degree_bound: usize) -> Result<FlatLimit> {
    check_ring(gens)?;
    let first = gens.first().ok_or_else(|| Error::BadParameter("no generators".into()))?;
    let (field, vars) = (first.field(), first.vars().clone());
    let n = vars.len();
    let gb = groebner_basis(gens)?;
    let bound = degree_bound as u32;
    if gb.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(FlatLimit {
            generators: vec![MultiPoly::constant(field, vars, field.one())],
            hilbert: vec![0; degree_bound + 1],
            unit_ideal: true,
        });
    }
    let quotient_dim = standard_monomials(&gb, n, DEFAULT_CAP)?.len();

    // columns: monomials of degree ≤ bound, highest degree first
    let mut columns: Vec<Monomial> = (0..=bound).flat_map(|d| Monomial::of_degree(n, d)).collect();
    columns.reverse();
    let col_of: BTreeMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vector> = Vec::new();
    for g in &gb {
        let dg = g.total_degree().unwrap();
        for e in 0..=bound.saturating_sub(dg) {
            if dg + e > bound {
                break;
            }
            for m in Monomial::of_degree(n, e) {
                let p = g.mul_term(&m, &field.one());
                let mut row = vec![field.zero(); columns.len()];
                for (mm, c) in p.terms() {
                    row[col_of[mm]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_rows_with_cols(field, &rows, columns.len())?;
    let (r, pivots) = m.rref();

    let mut generators = Vec::new();
    let mut in_dims = vec![0usize; degree_bound + 1];
    for (row, &pc) in pivots.iter().enumerate() {
        let d = columns[pc].degree();
        in_dims[d as usize] += 1;
        let terms = (0..columns.len())
            .filter(|&c| columns[c].degree() == d && !r.get(row, c).is_zero())
            .map(|c| (columns[c].clone(), r.get(row, c).clone()));
        generators.push(MultiPoly::from_terms(field, vars.clone(), terms));
    }
    generators.sort_by_key(|g| g.total_degree());
    let hilbert: Vec<usize> = (0..=degree_bound)
        .map(|d| Monomial::of_degree(n, d as u32).len() - in_dims[d])
        .collect();
    let total: usize = hilbert.iter().sum();
    if hilbert[degree_bound] != 0 || total != quotient_dim {
        return Err(Error::BoundTooSmall {
            bound: degree_bound,
            detail: format!("Hilbert function {hilbert:?} has not stabilized (expected total {quotient_dim})"),
        });
    }
    Ok(FlatLimit {
        generators,
        hilbert,
        unit_ideal: false,
    })
}

/// Vanishing ideal of a finite point set, as the kernel of the evaluation
/// map on monomials of degree ≤ `npoints` (which always generates it).
pub fn points_ideal(field: Field, vars: Arc<[String]>, points: &[Vector]) -> Result<Vec<MultiPoly>> {
    let n = vars.len();
    let monos: Vec<Monomial> = (0..=points.len() as u32).flat_map(|d| Monomial::of_degree(n, d)).collect();
    let rows: Vec<Vector> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| MultiPoly::term(field, vars.clone(), m.clone(), field.one()).eval(p))
                .collect::<Result<Vector>>()
        })
        .collect::<Result<_>>()?;
    let eval = Matrix::from_rows_with_cols(field, &rows, monos.len())?;
    let kernel = eval.nullspace();
    let gens: Vec<MultiPoly> = kernel
        .into_iter()
        .map(|v| MultiPoly::from_terms(field, vars.clone(), monos.iter().cloned().zip(v)))
        .collect();
    groebner_basis(&gens)
}
