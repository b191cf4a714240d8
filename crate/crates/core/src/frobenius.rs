//! Orientations, augmentations, and the constructions on oriented
//! Gorenstein algebras.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{table, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::families::AlgebraFamily;
use crate::forms::{self, BilinearForm};
use crate::linalg::{dot, unit_vector, Matrix, Subspace, Vector};
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{Coefficient, Field, Scalar, TPoly};

/// `B_φ(e_i, e_j) = φ(e_i e_j)`.
pub fn b_phi(a: &FiniteAlgebra, phi: &[Scalar]) -> Result<BilinearForm> {
    let d = a.dim();
    if phi.len() != d {
        return Err(Error::DimensionMismatch(format!("orientation of length {} in dimension {d}", phi.len())));
    }
    let mut g = Matrix::zeros(a.field(), d, d);
    for i in 0..d {
        for j in i..d {
            let v = dot(phi, &a.basis_product(i, j));
            g.set(j, i, v.clone());
            g.set(i, j, v);
        }
    }
    BilinearForm::new(g)
}

/// A unital algebra with a functional whose form `B_φ` is non-degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedAlgebra {
    pub algebra: FiniteAlgebra,
    pub phi: Vector,
}

impl OrientedAlgebra {
    pub fn new(algebra: FiniteAlgebra, phi: Vector) -> Result<OrientedAlgebra> {
        let b = b_phi(&algebra, &phi)?;
        if !b.is_nondegenerate() {
            return Err(Error::BadOrientation("B_phi is degenerate".into()));
        }
        Ok(OrientedAlgebra { algebra, phi })
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn form(&self) -> BilinearForm {
        b_phi(&self.algebra, &self.phi).expect("validated")
    }

    pub fn phi_of(&self, v: &[Scalar]) -> Scalar {
        dot(&self.phi, v)
    }
}

/// An oriented algebra with an isotropic augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedAlgebra {
    pub oa: OrientedAlgebra,
    pub e: Vector,
}

impl AugmentedAlgebra {
    pub fn new(oa: OrientedAlgebra, e: Vector) -> Result<AugmentedAlgebra> {
        if !augmentation_check(&oa.algebra, &e) {
            return Err(Error::NotAugmentation("e is not a unital algebra map".into()));
        }
        if !isotropy_check(&oa, &e)? {
            return Err(Error::NotIsotropic("B_phi(e*(1), e*(1)) is nonzero".into()));
        }
        Ok(AugmentedAlgebra { oa, e })
    }

    pub fn field(&self) -> Field {
        self.oa.field()
    }

    pub fn dim(&self) -> usize {
        self.oa.dim()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.oa.algebra
    }

    pub fn socle(&self) -> Vector {
        socle_generator(&self.oa, &self.e).expect("validated")
    }
}

/// Outcome of the Gorenstein decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GorensteinVerdict {
    Oriented { witness: Vector, trials: usize, symbolic: bool },
    NotGorenstein { certificate: String, trials: usize },
    Inconclusive { trials: usize, reason: String },
}

pub const DEFAULT_TRIALS: usize = 16;
pub const DEFAULT_SYMBOLIC_MAX_DIM: usize = 8;

/// Symbolic Gram of `B_φ` over `k[φ_1, …, φ_d]`.
fn generic_gram(a: &FiniteAlgebra) -> (Arc<[String]>, Vec<Vec<MultiPoly>>) {
    let (field, d) = (a.field(), a.dim());
    let vars: Arc<[String]> = (1..=d).map(|i| format!("phi{i}")).collect::<Vec<_>>().into();
    let g = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    MultiPoly::from_terms(
                        field,
                        vars.clone(),
                        a.basis_product(i, j)
                            .into_iter()
                            .enumerate()
                            .map(|(k, c)| (Monomial::var(d, k), c)),
                    )
                })
                .collect()
        })
        .collect();
    (vars, g)
}

/// Determinant by Laplace expansion over column subsets.
pub(crate) fn symbolic_det(field: Field, vars: &Arc<[String]>, g: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = g.len();
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::constant(field, vars.clone(), field.one()));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == n {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || g[r][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let mut term = cur.mul(&g[r][c]).expect("same ring");
            if above % 2 == 1 {
                term = term.neg();
            }
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(p) => p.add(&term).expect("same ring"),
                None => term,
            });
        }
        dp[mask] = Some(cur);
    }
    dp[(1 << n) - 1]
        .clone()
        .unwrap_or_else(|| MultiPoly::zero(field, vars.clone()))
}

/// Finds a point where `p` is nonzero by fixing one variable at a time.
pub(crate) fn nonvanishing_point(p: &MultiPoly) -> Option<Vector> {
    let field = p.field();
    let n = p.nvars();
    let deg = p.total_degree().unwrap_or(0) as i64;
    let candidates: Vec<Scalar> = match field.elements() {
        Some(all) => all,
        None => (0..=deg + 1).flat_map(|k| [field.from_i64(k), field.from_i64(-k)]).collect(),
    };
    let mut cur = p.clone();
    let mut point = Vec::with_capacity(n);
    for i in 0..n {
        let v = candidates.iter().find(|v| !cur.substitute(i, v).is_zero())?;
        cur = cur.substitute(i, v);
        point.push(v.clone());
    }
    Some(point)
}

/// Decides whether `a` admits an orientation: random sampling first, then
/// (for `dim ≤ symbolic_max_dim`) the symbolic determinant of `B_φ`.
pub fn gorenstein_test(a: &FiniteAlgebra, seed: u64, trials: usize, symbolic_max_dim: usize) -> GorensteinVerdict {
    let (field, d) = (a.field(), a.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let phi: Vector = (0..d).map(|_| field.random(&mut rng, 16)).collect();
        if b_phi(a, &phi).map(|b| b.is_nondegenerate()).unwrap_or(false) {
            return GorensteinVerdict::Oriented {
                witness: phi,
                trials: trial,
                symbolic: false,
            };
        }
    }
    if d > symbolic_max_dim {
        return GorensteinVerdict::Inconclusive {
            trials,
            reason: format!("{trials} samples failed and dimension {d} exceeds the symbolic cap {symbolic_max_dim}"),
        };
    }
    let (vars, g) = generic_gram(a);
    let det = symbolic_det(field, &vars, &g);
    if det.is_zero() {
        return GorensteinVerdict::NotGorenstein {
            certificate: det.to_string(),
            trials,
        };
    }
    match nonvanishing_point(&det) {
        Some(phi) => {
            debug_assert!(b_phi(a, &phi).unwrap().is_nondegenerate());
            GorensteinVerdict::Oriented {
                witness: phi,
                trials,
                symbolic: true,
            }
        }
        None => GorensteinVerdict::Inconclusive {
            trials,
            reason: format!("det B_phi = {det} is nonzero but vanishes on every point of {field}^{d}"),
        },
    }
}

/// Whether `e` is a unital algebra map `A → k`.
pub fn augmentation_check(a: &FiniteAlgebra, e: &[Scalar]) -> bool {
    a.is_character(e)
}

/// The element `e*(1)`, defined by `B_φ(e*(1), y) = e(y)`.
pub fn socle_generator(oa: &OrientedAlgebra, e: &[Scalar]) -> Result<Vector> {
    if e.len() != oa.dim() {
        return Err(Error::DimensionMismatch("augmentation length".into()));
    }
    oa.form()
        .gram()
        .solve(e)
        .map_err(|_| Error::Degenerate("B_phi is degenerate".into()))
}

pub fn kernel_of(field: Field, functional: &[Scalar]) -> Subspace {
    let d = functional.len();
    let m = Matrix::from_rows_with_cols(field, &[functional.to_vec()], d).unwrap();
    Subspace::span(field, d, &m.nullspace()).unwrap()
}

/// `e(e*(1)) = 0`, cross-checked against `Ann(ker e) ⊆ ker e`.
pub fn isotropy_check(oa: &OrientedAlgebra, e: &[Scalar]) -> Result<bool> {
    let x = socle_generator(oa, e)?;
    let by_form = dot(e, &x).is_zero();
    let ker = kernel_of(oa.field(), e);
    let by_ann = oa.algebra.annihilator(&ker)?.is_subspace_of(&ker);
    assert_eq!(by_form, by_ann, "isotropy criteria disagree");
    Ok(by_form)
}

/// A non-unital algebra with a non-degenerate invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUnitalOriented {
    pub labels: Vec<String>,
    /// Flat structure constants, like [`FiniteAlgebra::constants`].
    pub c: Vec<Scalar>,
    pub form: BilinearForm,
}

impl NonUnitalOriented {
    pub fn new(labels: Vec<String>, c: Vec<Scalar>, form: BilinearForm) -> Result<NonUnitalOriented> {
        let field = form.field();
        let d = labels.len();
        if form.dim() != d || c.len() != d * d * d {
            return Err(Error::DimensionMismatch("non-unital table and form sizes".into()));
        }
        table::check_commutative(d, &c)?;
        table::check_associative(field, d, &c)?;
        if !form.is_nondegenerate() {
            return Err(Error::Degenerate("non-unital form".into()));
        }
        let nu = NonUnitalOriented { labels, c, form };
        for i in 0..d {
            for j in 0..d {
                for k in j..d {
                    let (ei, ej, ek) = (unit_vector(field, d, i), unit_vector(field, d, j), unit_vector(field, d, k));
                    if nu.form.eval(&nu.multiply(&ei, &ej), &ek) != nu.form.eval(&ei, &nu.multiply(&ej, &ek)) {
                        return Err(Error::BadForm(format!("B(xy, z) != B(x, yz) at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(nu)
    }

    /// `(V, B)` with zero multiplication.
    pub fn trivial(form: BilinearForm) -> Result<NonUnitalOriented> {
        let d = form.dim();
        let labels = (1..=d).map(|i| format!("v{i}")).collect();
        NonUnitalOriented::new(labels, vec![form.field().zero(); d * d * d], form)
    }

    pub fn field(&self) -> Field {
        self.form.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        table::multiply(self.field(), self.dim(), &self.c, a, b)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub lambda: Scalar,
    pub nonunital: NonUnitalOriented,
    /// Rows `1, x, v_1, …, v_m` in the original coordinates.
    pub adapted_basis: Matrix,
}

/// Splits `(A, φ, e)` as `k·1 ⊕ k·x ⊕ V` with `x = e*(1)` and
/// `V = span{1, x}^⊥`.
pub fn decompose_augmented(aug: &AugmentedAlgebra) -> Result<Decomposition> {
    let oa = &aug.oa;
    let (field, d) = (oa.field(), oa.dim());
    if !isotropy_check(oa, &aug.e)? {
        return Err(Error::NotIsotropic("augmentation".into()));
    }
    let x = aug.socle();
    let unit = oa.algebra.unit().clone();
    let b = oa.form();
    let hx = Subspace::span(field, d, &[unit.clone(), x.clone()])?;
    let v = b.orth_complement(&hx)?;
    let vbasis = v.basis();
    let mut rows = vec![unit, x];
    rows.extend(vbasis.iter().cloned());
    let adapted = Matrix::from_rows_with_cols(field, &rows, d)?;
    let m = vbasis.len();
    let to_adapted = adapted.transpose().inverse()?;
    let mut c = vec![field.zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            let coords = to_adapted.mul_vec(&oa.algebra.multiply(&vbasis[i], &vbasis[j])?)?;
            for k in 0..m {
                c[table::idx(m, i, j, k)] = coords[2 + k].clone();
            }
        }
    }
    let labels = (1..=m).map(|i| format!("v{i}")).collect();
    let nonunital = NonUnitalOriented::new(labels, c, b.restrict(&v))?;
    Ok(Decomposition {
        lambda: oa.phi_of(oa.algebra.unit()),
        nonunital,
        adapted_basis: adapted,
    })
}

/// The algebra on `k ⊕ kx ⊕ V` with
/// `(r + sx, v)(r' + s'x, v') = (rr' + (sr' + s'r + B(v, v'))x, r'v + rv' + vv')`,
/// orientation `φ(r + sx, v) = rλ + s` and augmentation `e(r + sx, v) = r`.
pub fn unitalize(lambda: &Scalar, nu: &NonUnitalOriented) -> Result<AugmentedAlgebra> {
    let field = nu.field();
    let m = nu.dim();
    let d = m + 2;
    let mut c = vec![field.zero(); d * d * d];
    let one = field.one();
    for k in 0..d {
        c[table::idx(d, 0, k, k)] = one.clone();
        c[table::idx(d, k, 0, k)] = one.clone();
    }
    for i in 0..m {
        for j in 0..m {
            c[table::idx(d, 2 + i, 2 + j, 1)] = nu.form.gram().get(i, j).clone();
            for k in 0..m {
                c[table::idx(d, 2 + i, 2 + j, 2 + k)] = nu.c[table::idx(m, i, j, k)].clone();
            }
        }
    }
    let mut labels = vec!["1".to_string(), "x".to_string()];
    labels.extend(nu.labels.iter().cloned());
    let algebra = FiniteAlgebra::from_constants(field, labels, c, Some(unit_vector(field, d, 0)))?;
    let mut phi = vec![field.zero(); d];
    phi[0] = lambda.clone();
    phi[1] = one.clone();
    let oa = OrientedAlgebra::new(algebra, phi)?;
    AugmentedAlgebra::new(oa, unit_vector(field, d, 0))
}

/// `unitalize(0, (V, B, 0))`.
pub fn form_to_algebra(b: &BilinearForm) -> Result<AugmentedAlgebra> {
    if !b.is_nondegenerate() {
        return Err(Error::Degenerate("form_to_algebra needs a non-degenerate form".into()));
    }
    unitalize(&b.field().zero(), &NonUnitalOriented::trivial(b.clone())?)
}

/// `A ⊕ A*` with `(a, f)(b, g) = (ab, a·g + b·f)` and `φ(a, f) = f(1)`.
pub fn hyp_algebra(a: &FiniteAlgebra) -> Result<OrientedAlgebra> {
    let (field, d) = (a.field(), a.dim());
    let n = 2 * d;
    let mut c = vec![field.zero(); n * n * n];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let cijk = a.constant(i, j, k);
                c[table::idx(n, i, j, k)] = cijk.clone();
                // e_i · e_k* = Σ_j c_ijk e_j*
                c[table::idx(n, i, d + k, d + j)] = cijk.clone();
                c[table::idx(n, d + k, i, d + j)] = cijk.clone();
            }
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| format!("{l}*")));
    let mut unit = a.unit().clone();
    unit.extend(vec![field.zero(); d]);
    let algebra = FiniteAlgebra::from_constants(field, labels, c, Some(unit))?;
    let mut phi = vec![field.zero(); d];
    phi.extend(a.unit().iter().cloned());
    OrientedAlgebra::new(algebra, phi)
}

/// Surgery of `B_φ` along the unit, for `φ(1) = 0`.
pub fn surgery_inverse(oa: &OrientedAlgebra) -> Result<forms::Surgery> {
    if !oa.phi_of(oa.algebra.unit()).is_zero() {
        return Err(Error::NotIsotropicUnit);
    }
    let line = Subspace::span(oa.field(), oa.dim(), &[oa.algebra.unit().clone()])?;
    forms::surgery(&oa.form(), &line)
}

/// The Rees family with its recorded basis.
#[derive(Clone, Debug)]
pub struct ReesFamily {
    pub family: AlgebraFamily,
    /// Rows `1, e_1, …, e_m, x` in the coordinates of the input; the fiber at
    /// `t = 1` is the input in this basis.
    pub basis: Matrix,
    pub surgery: forms::Surgery,
    /// `φ(x^2)`.
    pub phi_x2: Scalar,
}

impl ReesFamily {
    /// Reorders a `(1, e_1, …, e_m, x)` basis to `(1, x, e_1, …, e_m)`.
    pub fn reorder_to_unitalized(&self) -> Matrix {
        let d = self.basis.rows();
        let field = self.basis.field();
        let mut order = vec![0, d - 1];
        order.extend(1..d - 1);
        Matrix::identity(field, d).select_rows(&order)
    }
}

/// `Rees(A, φ)` on the basis `(1, e_1 t, …, e_m t, x t^2)`, with
/// orientation `a ↦ φ(a)/t^2`.
pub fn rees_family(oa: &OrientedAlgebra) -> Result<ReesFamily> {
    let (field, d) = (oa.field(), oa.dim());
    let surgery = surgery_inverse(oa)?;
    let es = surgery.section.to_rows();
    let b = oa.form();
    // φ(x) = 1 and B(x, e_i) = 0
    let mut rows = vec![oa.phi.clone()];
    for e in &es {
        rows.push(b.gram().mul_vec(e)?);
    }
    let mut rhs = vec![field.zero(); rows.len()];
    rhs[0] = field.one();
    let sys = Matrix::from_rows_with_cols(field, &rows, d)?;
    let x = sys
        .solve_any(&rhs)?
        .ok_or_else(|| Error::Degenerate("no x with phi(x) = 1 orthogonal to the section".into()))?;
    let mut basis_rows = vec![oa.algebra.unit().clone()];
    basis_rows.extend(es.iter().cloned());
    basis_rows.push(x.clone());
    let basis = Matrix::from_rows_with_cols(field, &basis_rows, d)?;
    let adapted = oa.algebra.base_change(&basis, None)?;
    let weight = |i: usize| -> i64 {
        if i == 0 {
            0
        } else if i == d - 1 {
            2
        } else {
            1
        }
    };
    let mut c = vec![TPoly::zero(field); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let s = adapted.constant(i, j, k);
                if s.is_zero() {
                    continue;
                }
                let w = weight(i) + weight(j) - weight(k);
                if w < 0 {
                    return Err(Error::BadFamily("Rees constants are not polynomial in t".into()));
                }
                c[table::idx(d, i, j, k)] = TPoly::monomial(s.clone(), w as usize);
            }
        }
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=es.len()).map(|i| format!("e{i}*t")));
    labels.push("x*t^2".into());
    let unit: Vec<TPoly> = unit_vector(field, d, 0).iter().map(TPoly::lift).collect();
    let phi: Vec<TPoly> = unit_vector(field, d, d - 1).iter().map(TPoly::lift).collect();
    let family = AlgebraFamily::new(field, labels, c, unit, Some(phi), vec![])?;
    let phi_x2 = oa.phi_of(&oa.algebra.multiply(&x, &x)?);
    Ok(ReesFamily {
        family,
        basis,
        surgery,
        phi_x2,
    })
}

/// The connected-sum recipe over any coefficient ring where the first
/// summand is constant. The fiber product `A_1 ×_k A_2` gets the basis
/// `(1, 1)`, `(w, 0)` for `w ∈ ker e_1 ∩ ker φ_1`, and `(0, k)` for `k` in a
/// basis of `ker e_2`; the relation `(s_1, 0) ≡ (0, s_2)` eliminates the
/// socle of the first factor.
#[derive(Clone, Debug)]
pub struct Glue<C: Coefficient> {
    field: Field,
    // first factor, lifted
    c1: Vec<C>,
    u1: Vec<C>,
    e1: Vec<C>,
    phi1: Vec<C>,
    s1: Vec<C>,
    w1: Subspace,
    w1_pivots: Vec<usize>,
    // second factor
    c2: Vec<C>,
    u2: Vec<C>,
    e2: Vec<C>,
    phi2: Vec<C>,
    s2: Vec<C>,
    j2: usize,
    e2j_inv: C,
    pub labels: Vec<String>,
    pub c: Vec<C>,
    pub unit: Vec<C>,
    pub phi: Vec<C>,
    pub e: Vec<C>,
}

fn dot_c<C: Coefficient>(field: Field, a: &[C], b: &[C]) -> C {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(C::zero_in(field), |acc, (x, y)| acc.plus(&x.times(y)))
}

fn lin<C: Coefficient>(a: &[C], s: &C, b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.plus(&s.times(y))).collect()
}

/// Data of the second summand of a connected sum.
pub struct Summand<C> {
    pub labels: Vec<String>,
    pub c: Vec<C>,
    pub unit: Vec<C>,
    pub phi: Vec<C>,
    pub e: Vec<C>,
    pub socle: Vec<C>,
}

impl<C: Coefficient> Glue<C> {
    pub fn new(t1: &AugmentedAlgebra, t2: Summand<C>) -> Result<Glue<C>> {
        let field = t1.field();
        let d1 = t1.dim();
        let d2 = t2.labels.len();
        let lift = |v: &[Scalar]| v.iter().map(C::lift).collect::<Vec<C>>();
        let w1 = {
            let m = Matrix::from_rows_with_cols(field, &[t1.e.clone(), t1.oa.phi.clone()], d1)?;
            Subspace::span(field, d1, &m.nullspace())?
        };
        let (_, w1_pivots) = w1.basis_matrix().rref();
        let (j2, e2j) = (0..d2)
            .find_map(|j| t2.e[j].as_scalar().filter(|s| !s.is_zero()).map(|s| (j, s)))
            .ok_or_else(|| Error::NotAugmentation("no basis element with a constant nonzero augmentation value".into()))?;
        let e2j_inv = C::lift(&e2j.inv().unwrap());
        let mut g = Glue {
            field,
            c1: lift(t1.algebra().constants()),
            u1: lift(t1.algebra().unit()),
            e1: lift(&t1.e),
            phi1: lift(&t1.oa.phi),
            s1: lift(&t1.socle()),
            w1,
            w1_pivots,
            c2: t2.c,
            u2: t2.unit,
            e2: t2.e,
            phi2: t2.phi,
            s2: t2.socle,
            j2,
            e2j_inv,
            labels: vec![],
            c: vec![],
            unit: vec![],
            phi: vec![],
            e: vec![],
        };
        let basis = g.basis_pairs();
        let n = basis.len();
        debug_assert_eq!(n, d1 + d2 - 2);
        let mut labels = vec!["1".to_string()];
        for &p in &g.w1_pivots {
            labels.push(format!("{}_1", t1.algebra().labels()[p]));
        }
        for i in (0..d2).filter(|&i| i != j2) {
            labels.push(format!("{}_2", t2.labels[i]));
        }
        let mut c = vec![C::zero_in(field); n * n * n];
        for a in 0..n {
            for b in a..n {
                let p = g.pair_product(&basis[a], &basis[b]);
                let coords = g.class_of(&p.0, &p.1);
                for k in 0..n {
                    c[table::idx(n, a, b, k)] = coords[k].clone();
                    c[table::idx(n, b, a, k)] = coords[k].clone();
                }
            }
        }
        let phi = basis
            .iter()
            .map(|(p1, p2)| dot_c(field, &g.phi1, p1).plus(&dot_c(field, &g.phi2, p2)))
            .collect();
        let mut unit = vec![C::zero_in(field); n];
        unit[0] = C::one_in(field);
        g.labels = labels;
        g.c = c;
        g.phi = phi;
        g.e = unit.clone();
        g.unit = unit;
        Ok(g)
    }

    fn d1(&self) -> usize {
        self.u1.len()
    }

    fn d2(&self) -> usize {
        self.u2.len()
    }

    pub fn dim(&self) -> usize {
        self.d1() + self.d2() - 2
    }

    /// The chosen fiber-product representatives of the basis.
    pub fn basis_pairs(&self) -> Vec<(Vec<C>, Vec<C>)> {
        let field = self.field;
        let (d1, d2) = (self.d1(), self.d2());
        let zero1 = vec![C::zero_in(field); d1];
        let zero2 = vec![C::zero_in(field); d2];
        let mut out = vec![(self.u1.clone(), self.u2.clone())];
        for w in self.w1.basis() {
            out.push((w.iter().map(C::lift).collect(), zero2.clone()));
        }
        let ej = unit_c(field, d2, self.j2);
        for i in (0..d2).filter(|&i| i != self.j2) {
            let r = self.e2[i].times(&self.e2j_inv).negated();
            out.push((zero1.clone(), lin(&unit_c(field, d2, i), &r, &ej)));
        }
        out
    }

    fn pair_product(&self, a: &(Vec<C>, Vec<C>), b: &(Vec<C>, Vec<C>)) -> (Vec<C>, Vec<C>) {
        (
            table::multiply(self.field, self.d1(), &self.c1, &a.0, &b.0),
            table::multiply(self.field, self.d2(), &self.c2, &a.1, &b.1),
        )
    }

    /// Coordinates of the class of a fiber-product element `(p1, p2)`.
    pub fn class_of(&self, p1: &[C], p2: &[C]) -> Vec<C> {
        let field = self.field;
        let alpha = dot_c(field, &self.e1, p1);
        debug_assert_eq!(alpha, dot_c(field, &self.e2, p2), "not in the fiber product");
        let r1 = lin(p1, &alpha.negated(), &self.u1);
        let beta = dot_c(field, &self.phi1, &r1);
        let w = lin(&r1, &beta.negated(), &self.s1);
        let r2 = lin(&lin(p2, &alpha.negated(), &self.u2), &beta, &self.s2);
        let mut out = vec![alpha];
        out.extend(self.w1_pivots.iter().map(|&p| w[p].clone()));
        out.extend((0..self.d2()).filter(|&i| i != self.j2).map(|i| r2[i].clone()));
        out
    }

    /// Carries a functional on the second summand to the connected sum.
    pub fn transport_second(&self, f: &[C]) -> Vec<C> {
        self.basis_pairs().iter().map(|(_, p2)| dot_c(self.field, f, p2)).collect()
    }
}

fn unit_c<C: Coefficient>(field: Field, n: usize, i: usize) -> Vec<C> {
    (0..n).map(|k| if k == i { C::one_in(field) } else { C::zero_in(field) }).collect()
}

/// Result of a field-level connected sum.
#[derive(Clone, Debug)]
pub struct ConnectedSum {
    pub result: AugmentedAlgebra,
    pub glue: Glue<Scalar>,
}

pub fn summand_of(t: &AugmentedAlgebra) -> Summand<Scalar> {
    Summand {
        labels: t.algebra().labels().to_vec(),
        c: t.algebra().constants().to_vec(),
        unit: t.algebra().unit().clone(),
        phi: t.oa.phi.clone(),
        e: t.e.clone(),
        socle: t.socle(),
    }
}

/// `(A_1 ×_k A_2)/(x_1, −x_2)` with `φ = φ_1 + φ_2`.
pub fn connected_sum(t1: &AugmentedAlgebra, t2: &AugmentedAlgebra) -> Result<ConnectedSum> {
    if t1.field() != t2.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", t1.field(), t2.field())));
    }
    if !isotropy_check(&t1.oa, &t1.e)? || !isotropy_check(&t2.oa, &t2.e)? {
        return Err(Error::NotIsotropic("summand".into()));
    }
    let glue = Glue::new(t1, summand_of(t2))?;
    let algebra = FiniteAlgebra::from_constants(t1.field(), glue.labels.clone(), glue.c.clone(), Some(glue.unit.clone()))?;
    let oa = OrientedAlgebra::new(algebra, glue.phi.clone())?;
    let result = AugmentedAlgebra::new(oa, glue.e.clone())?;
    Ok(ConnectedSum { result, glue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, ground_field, truncated_polynomial};

    fn q() -> Field {
        Field::Rationals
    }

    fn dual(f: Field) -> AugmentedAlgebra {
        let a = truncated_polynomial(f, 2);
        let oa = OrientedAlgebra::new(a, vec![f.zero(), f.one()]).unwrap();
        AugmentedAlgebra::new(oa, vec![f.one(), f.zero()]).unwrap()
    }

    #[test]
    fn gram_examples() {
        let a = truncated_polynomial(q(), 2);
        assert_eq!(b_phi(&a, &[q().zero(), q().one()]).unwrap(), forms::hyperbolic_form(q(), 1));
        let deg = b_phi(&a, &[q().one(), q().zero()]).unwrap();
        assert!(!deg.is_nondegenerate());
        let a3 = truncated_polynomial(q(), 3);
        let g = b_phi(&a3, &[q().zero(), q().zero(), q().one()]).unwrap();
        assert_eq!(g, BilinearForm::from_i64(q(), &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).unwrap());
    }

    #[test]
    fn dual_numbers_socle() {
        let t = dual(q());
        assert_eq!(t.socle(), vec![q().zero(), q().one()]);
        assert!(isotropy_check(&t.oa, &t.e).unwrap());
        assert!(!augmentation_check(t.algebra(), &[q().zero(), q().one()]));
    }

    #[test]
    fn split_algebra_not_isotropic() {
        let f = q();
        let a = direct_product(&ground_field(f), &ground_field(f)).unwrap();
        let oa = OrientedAlgebra::new(a, vec![f.from_i64(2), f.from_i64(3)]).unwrap();
        assert!(augmentation_check(&oa.algebra, &[f.one(), f.zero()]));
        assert!(!isotropy_check(&oa, &[f.one(), f.zero()]).unwrap());
    }

    #[test]
    fn truncated_isotropic() {
        let f = q();
        let a = truncated_polynomial(f, 4);
        let oa = OrientedAlgebra::new(a, unit_vector(f, 4, 3)).unwrap();
        assert!(isotropy_check(&oa, &unit_vector(f, 4, 0)).unwrap());
        let aug = AugmentedAlgebra::new(oa, unit_vector(f, 4, 0)).unwrap();
        let dec = decompose_augmented(&aug).unwrap();
        assert!(dec.lambda.is_zero());
        assert_eq!(dec.nonunital.dim(), 2);
        let back = unitalize(&dec.lambda, &dec.nonunital).unwrap();
        let adapted = aug.algebra().base_change(&dec.adapted_basis, None).unwrap();
        assert_eq!(back.algebra().constants(), adapted.constants());
        let s = surgery_inverse(&aug.oa).unwrap();
        assert_eq!(s.form.dim(), 2);
        assert!(s.form.is_nondegenerate());
    }

    #[test]
    fn unitalize_examples() {
        let f = q();
        let empty = NonUnitalOriented::trivial(BilinearForm::zero(f, 0)).unwrap();
        let t = unitalize(&f.from_i64(5), &empty).unwrap();
        assert_eq!(t.oa.form(), BilinearForm::from_i64(f, &[&[5, 1], &[1, 0]]).unwrap());
        let d = form_to_algebra(&BilinearForm::zero(f, 0)).unwrap();
        assert_eq!(d.algebra().constants(), truncated_polynomial(f, 2).constants());
        let b = BilinearForm::from_i64(f, &[&[2, 1], &[1, -1]]).unwrap();
        let t = form_to_algebra(&b).unwrap();
        assert_eq!(t.oa.form(), forms::hyperbolic_form(f, 1).direct_sum(&b));
        let dec = decompose_augmented(&t).unwrap();
        assert!(dec.nonunital.c.iter().all(Scalar::is_zero));
    }

    #[test]
    fn connected_sums() {
        let f = q();
        let dd = connected_sum(&dual(f), &dual(f)).unwrap();
        assert_eq!(dd.result.dim(), 2);
        assert_eq!(dd.result.algebra().constants(), truncated_polynomial(f, 2).constants());
        assert_eq!(dd.result.oa.phi, vec![f.zero(), f.one()]);
        let a = truncated_polynomial(f, 4);
        let t = AugmentedAlgebra::new(OrientedAlgebra::new(a, unit_vector(f, 4, 3)).unwrap(), unit_vector(f, 4, 0)).unwrap();
        let s = connected_sum(&t, &dual(f)).unwrap();
        assert_eq!(s.result.dim(), 4);
        let s2 = connected_sum(&dual(f), &t).unwrap();
        assert_eq!(s2.result.dim(), 4);
    }

    #[test]
    fn hyp_algebra_examples() {
        let f = q();
        let h = hyp_algebra(&ground_field(f)).unwrap();
        assert_eq!(h.algebra.constants(), truncated_polynomial(f, 2).constants());
        assert_eq!(h.phi, vec![f.zero(), f.one()]);
        let p = direct_product(&ground_field(f), &ground_field(f)).unwrap();
        let h2 = hyp_algebra(&p).unwrap();
        assert_eq!(h2.dim(), 4);
        let w = forms::witt_invariants(&h2.form()).unwrap();
        assert_eq!(w.signature, Some(0));
    }

    #[test]
    fn gorenstein_decisions() {
        let f = q();
        let x = truncated_polynomial(f, 5);
        assert!(matches!(gorenstein_test(&x, 1, 8, 8), GorensteinVerdict::Oriented { .. }));
        // k[x, y]/(x^2, xy, y^2)
        let mut c = vec![f.zero(); 27];
        for k in 0..3 {
            c[table::idx(3, 0, k, k)] = f.one();
            c[table::idx(3, k, 0, k)] = f.one();
        }
        let a = FiniteAlgebra::from_constants(f, vec!["1".into(), "x".into(), "y".into()], c, None).unwrap();
        match gorenstein_test(&a, 1, 8, 8) {
            GorensteinVerdict::NotGorenstein { certificate, .. } => assert_eq!(certificate, "0"),
            other => panic!("{other:?}"),
        }
        // forced symbolic path: no samples
        match gorenstein_test(&x, 0, 0, 8) {
            GorensteinVerdict::Oriented { witness, symbolic, .. } => {
                assert!(symbolic);
                assert!(b_phi(&x, &witness).unwrap().is_nondegenerate());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(gorenstein_test(&x, 0, 0, 2), GorensteinVerdict::Inconclusive { .. }));
    }

    #[test]
    fn symbolic_determinant_of_split_algebra() {
        let f = q();
        let mut a = ground_field(f);
        for _ in 0..2 {
            a = direct_product(&a, &ground_field(f)).unwrap();
        }
        let (vars, g) = generic_gram(&a);
        let det = symbolic_det(f, &vars, &g);
        assert_eq!(det.to_string(), "phi1*phi2*phi3");
    }
}
