//! Three-way tensors, structure tensors, and degenerations to the big
//! Coppersmith–Winograd tensor.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{table, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::families::AlgebraFamily;
use crate::forms::{witt_invariants, WittInvariants};
use crate::frobenius::{
    decompose_augmented, gorenstein_test, nonvanishing_point, symbolic_det, AugmentedAlgebra, Decomposition,
    GorensteinVerdict, DEFAULT_SYMBOLIC_MAX_DIM, DEFAULT_TRIALS,
};
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::poly::{flat_limit_ideal, points_ideal, Monomial, MultiPoly, Quotient};
use crate::scalar::{Field, Scalar, TPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tensor3 {
    pub field: Field,
    pub dims: (usize, usize, usize),
    /// Row-major: `entries[(i * d2 + j) * d3 + k]`.
    pub entries: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: Field, dims: (usize, usize, usize)) -> Tensor3 {
        Tensor3 {
            field,
            dims,
            entries: vec![field.zero(); dims.0 * dims.1 * dims.2],
        }
    }

    pub fn from_support(field: Field, dims: (usize, usize, usize), support: &[(usize, usize, usize, Scalar)]) -> Result<Tensor3> {
        let mut t = Tensor3::zeros(field, dims);
        for (i, j, k, v) in support {
            if *i >= dims.0 || *j >= dims.1 || *k >= dims.2 {
                return Err(Error::ShapeMismatch(format!("index ({i}, {j}, {k}) outside {dims:?}")));
            }
            let at = t.index(*i, *j, *k);
            t.entries[at] = v.clone();
        }
        Ok(t)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.index(i, j, k)]
    }

    pub fn support(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let (a, b, c) = self.dims;
        let mut out = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// `Σ_i a_i T[i][·][·]`.
    pub fn slice(&self, a: &[Scalar]) -> Result<Matrix> {
        let (d1, d2, d3) = self.dims;
        if a.len() != d1 {
            return Err(Error::ShapeMismatch(format!("contraction vector of length {} for first dimension {d1}", a.len())));
        }
        let mut m = Matrix::zeros(self.field, d2, d3);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..d2 {
                for k in 0..d3 {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        let s = m.get(j, k) + &(ai * v);
                        m.set(j, k, s);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn direct_sum(&self, other: &Tensor3) -> Tensor3 {
        let (a, b, c) = self.dims;
        let (x, y, z) = other.dims;
        let mut support = self.support();
        support.extend(other.support().into_iter().map(|(i, j, k, v)| (a + i, b + j, c + k, v)));
        Tensor3::from_support(self.field, (a + x, b + y, c + z), &support).expect("in range")
    }
}

/// `T[i][j][k] = c_ij^k`.
pub fn structure_tensor(a: &FiniteAlgebra) -> Tensor3 {
    let d = a.dim();
    Tensor3 {
        field: a.field(),
        dims: (d, d, d),
        entries: a.constants().to_vec(),
    }
}

/// `CW_q` from its support: with indices `0`, `1..=q`, `q + 1`, the entries
/// `(0,0,0)`, `(0,i,i)`, `(i,0,i)`, `(0,q+1,q+1)`, `(q+1,0,q+1)`, `(i,i,q+1)`
/// equal 1.
pub fn cw_tensor(field: Field, q: usize) -> Result<Tensor3> {
    if q == 0 {
        return Err(Error::BadParameter("q must be at least 1".into()));
    }
    let n = q + 2;
    let one = field.one();
    let mut support = vec![(0, 0, 0, one.clone()), (0, q + 1, q + 1, one.clone()), (q + 1, 0, q + 1, one.clone())];
    for i in 1..=q {
        support.push((0, i, i, one.clone()));
        support.push((i, 0, i, one.clone()));
        support.push((i, i, q + 1, one.clone()));
    }
    Tensor3::from_support(field, (n, n, n), &support)
}

/// The relations of `A_q = k[y_1..y_q]/((y_i y_j)_{i≠j}, (y_i^2 − y_j^2)_{i≠j}, y_1^3)`.
pub fn a_q_relations(field: Field, q: usize) -> Vec<MultiPoly> {
    let vars: Arc<[String]> = (1..=q).map(|i| format!("y{i}")).collect::<Vec<_>>().into();
    let y = |i: usize| MultiPoly::var(field, vars.clone(), i);
    let mut rels = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            rels.push(y(i).mul(&y(j)).unwrap());
            rels.push(y(i).pow(2).sub(&y(j).pow(2)).unwrap());
        }
    }
    rels.push(y(0).pow(3));
    rels
}

pub fn a_q(field: Field, q: usize) -> Result<Quotient> {
    let rels = a_q_relations(field, q);
    Quotient::new(field, rels[0].vars().clone(), &rels)
}

/// The structure tensor of the `n × n` matrix algebra on `E_ab`.
pub fn matrix_algebra_tensor(field: Field, n: usize) -> Tensor3 {
    let m = n * n;
    let mut support = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // E_ab E_bc = E_ac
                support.push((a * n + b, b * n + c, a * n + c, field.one()));
            }
        }
    }
    Tensor3::from_support(field, (m, m, m), &support).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OneGeneric {
    Witness { a: Vector, symbolic: bool },
    No { certificate: String },
    Inconclusive { trials: usize, reason: String },
}

/// Searches for `a` with `slice(a)` invertible: random samples, then the
/// symbolic determinant of the generic slice.
pub fn one_generic(t: &Tensor3, seed: u64, trials: usize, symbolic_max_dim: usize) -> Result<OneGeneric> {
    let (d1, d2, d3) = t.dims;
    if d2 != d3 {
        return Err(Error::ShapeMismatch(format!("slices are {d2}x{d3}")));
    }
    let field = t.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a: Vector = (0..d1).map(|_| field.random(&mut rng, 16)).collect();
        if t.slice(&a)?.rank() == d2 {
            return Ok(OneGeneric::Witness { a, symbolic: false });
        }
    }
    if d2 > symbolic_max_dim {
        return Ok(OneGeneric::Inconclusive {
            trials,
            reason: format!("slice size {d2} exceeds the symbolic cap {symbolic_max_dim}"),
        });
    }
    let vars: Arc<[String]> = (1..=d1).map(|i| format!("a{i}")).collect::<Vec<_>>().into();
    let g: Vec<Vec<MultiPoly>> = (0..d2)
        .map(|j| {
            (0..d3)
                .map(|k| MultiPoly::from_terms(field, vars.clone(), (0..d1).map(|i| (Monomial::var(d1, i), t.get(i, j, k).clone()))))
                .collect()
        })
        .collect();
    let det = symbolic_det(field, &vars, &g);
    if det.is_zero() {
        return Ok(OneGeneric::No { certificate: det.to_string() });
    }
    Ok(match nonvanishing_point(&det) {
        Some(a) => OneGeneric::Witness { a, symbolic: true },
        None => OneGeneric::Inconclusive {
            trials,
            reason: format!("det = {det} vanishes on every rational point"),
        },
    })
}

/// Whether the normalized slices `slice(a)^{-1} slice(e_i)` commute pairwise.
pub fn strassen_commuting(t: &Tensor3, a: &[Scalar]) -> Result<bool> {
    let s = t.slice(a)?;
    if !s.is_square() {
        return Err(Error::ShapeMismatch("slices are not square".into()));
    }
    let inv = s.inverse().map_err(|_| Error::SingularWitness)?;
    let d1 = t.dims.0;
    let ns: Vec<Matrix> = (0..d1)
        .map(|i| inv.mul(&t.slice(&unit_vector(t.field, d1, i))?))
        .collect::<Result<_>>()?;
    for i in 0..d1 {
        for j in i + 1..d1 {
            if ns[i].mul(&ns[j])? != ns[j].mul(&ns[i])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The family `(r + sx, v)(r' + s'x, v') = (rr' + (sr' + s'r + B(v, v'))x,
/// r'v + rv' + t·vv')` degenerating an augmented algebra to its `t = 0`
/// fiber with zero multiplication on `V`.
#[derive(Clone, Debug)]
pub struct CwDegeneration {
    pub family: AlgebraFamily,
    pub decomposition: Decomposition,
    pub invariants: WittInvariants,
    /// Over an algebraic closure the special fiber is `A_q`.
    pub special_fiber_is_a_q_over_closure: bool,
}

pub fn degeneration_to_cw(aug: &AugmentedAlgebra) -> Result<CwDegeneration> {
    let dec = decompose_augmented(aug)?;
    let field = aug.field();
    let nu = &dec.nonunital;
    let m = nu.dim();
    let d = m + 2;
    let zero = TPoly::zero(field);
    let mut c = vec![zero.clone(); d * d * d];
    for k in 0..d {
        c[table::idx(d, 0, k, k)] = TPoly::one(field);
        c[table::idx(d, k, 0, k)] = TPoly::one(field);
    }
    for i in 0..m {
        for j in 0..m {
            c[table::idx(d, 2 + i, 2 + j, 1)] = TPoly::constant(nu.form.gram().get(i, j).clone());
            for k in 0..m {
                c[table::idx(d, 2 + i, 2 + j, 2 + k)] = TPoly::monomial(nu.c[table::idx(m, i, j, k)].clone(), 1);
            }
        }
    }
    let mut labels = vec!["1".to_string(), "x".to_string()];
    labels.extend(nu.labels.iter().cloned());
    let lift = |v: Vector| v.into_iter().map(TPoly::constant).collect::<Vec<_>>();
    let mut phi = vec![field.zero(); d];
    phi[0] = dec.lambda.clone();
    phi[1] = field.one();
    let family = AlgebraFamily::new(
        field,
        labels,
        c,
        lift(unit_vector(field, d, 0)),
        Some(lift(phi)),
        vec![("e".into(), lift(unit_vector(field, d, 0)))],
    )?;
    let invariants = witt_invariants(&nu.form)?;
    let alternating = (0..m).all(|i| nu.form.gram().get(i, i).is_zero());
    let special = field.has_half() || !alternating || m == 0;
    Ok(CwDegeneration {
        family,
        decomposition: dec,
        invariants,
        special_fiber_is_a_q_over_closure: special,
    })
}

#[derive(Clone, Debug)]
pub struct ReducedDegeneration {
    pub points: Vec<Vector>,
    pub limit: Quotient,
    pub hilbert: Vec<usize>,
    pub verdict: GorensteinVerdict,
}

/// Flat limit of the cone over `q + 2` random points of the hyperplane
/// `y = 1`, i.e. of the points `z_i ∈ k^q` scaled to the origin.
pub fn reduced_degeneration(field: Field, q: usize, seed: u64) -> Result<ReducedDegeneration> {
    if q == 0 {
        return Err(Error::BadParameter("q must be at least 1".into()));
    }
    if field.characteristic() != 0 && field.characteristic() <= (q + 2) as u64 {
        return Err(Error::BadParameter(format!("characteristic must exceed q + 2 = {}", q + 2)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vector> = (0..q + 2).map(|_| (0..q).map(|_| field.random(&mut rng, 9)).collect()).collect();
    degeneration_of_points(field, q, points, seed)
}

/// As [`reduced_degeneration`] for given points of `k^q`.
pub fn degeneration_of_points(field: Field, q: usize, points: Vec<Vector>, seed: u64) -> Result<ReducedDegeneration> {
    let vars: Arc<[String]> = (1..=q).map(|i| format!("y{i}")).collect::<Vec<_>>().into();
    let ideal = points_ideal(field, vars.clone(), &points)?;
    let lim = match flat_limit_ideal(&ideal, 3) {
        Ok(l) => l,
        Err(Error::BoundTooSmall { detail, .. }) => return Err(Error::GenericityFailure(detail)),
        Err(e) => return Err(e),
    };
    let expected = vec![1, q, 1, 0];
    if lim.hilbert != expected {
        return Err(Error::GenericityFailure(format!(
            "Hilbert function {:?}, expected {:?}",
            lim.hilbert, expected
        )));
    }
    let limit = Quotient::new(field, vars, &lim.generators)?;
    let verdict = gorenstein_test(&limit.algebra, seed, DEFAULT_TRIALS, DEFAULT_SYMBOLIC_MAX_DIM);
    if !matches!(verdict, GorensteinVerdict::Oriented { .. }) {
        return Err(Error::GenericityFailure("the limit is not Gorenstein".into()));
    }
    Ok(ReducedDegeneration {
        points,
        limit,
        hilbert: lim.hilbert,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, ground_field, truncated_polynomial};
    use crate::families::gm_rescale_check;
    use crate::frobenius::OrientedAlgebra;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn cw_matches_a_q() {
        for n in 1..=4 {
            let a = a_q(q(), n).unwrap();
            assert_eq!(structure_tensor(&a.algebra), cw_tensor(q(), n).unwrap());
            assert_eq!(cw_tensor(q(), n).unwrap().support().len(), 3 * n + 3);
        }
        assert!(matches!(cw_tensor(q(), 0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn genericity_and_commuting() {
        let f = q();
        let one = structure_tensor(&ground_field(f));
        assert_eq!(one.entries, vec![f.one()]);
        let a = truncated_polynomial(f, 3);
        let t = structure_tensor(&a);
        assert_eq!(t.slice(a.unit()).unwrap(), Matrix::identity(f, 3));
        assert!(strassen_commuting(&t, a.unit()).unwrap());
        let zero = Tensor3::zeros(f, (2, 2, 2));
        assert!(matches!(one_generic(&zero, 1, 4, 8).unwrap(), OneGeneric::No { .. }));
        let cw = cw_tensor(f, 2).unwrap();
        match one_generic(&cw, 3, 8, 8).unwrap() {
            OneGeneric::Witness { a, .. } => assert!(strassen_commuting(&cw, &a).unwrap()),
            other => panic!("{other:?}"),
        }
        let mm = matrix_algebra_tensor(f, 2);
        let id = vec![f.one(), f.zero(), f.zero(), f.one()];
        assert!(!strassen_commuting(&mm, &id).unwrap());
        assert!(matches!(strassen_commuting(&zero, &[f.one(), f.one()]), Err(Error::SingularWitness)));
        let rect = Tensor3::zeros(f, (2, 2, 3));
        assert!(matches!(one_generic(&rect, 0, 1, 8), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn block_sum_of_products() {
        let f = q();
        let a = truncated_polynomial(f, 2);
        let b = truncated_polynomial(f, 3);
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(structure_tensor(&p), structure_tensor(&a).direct_sum(&structure_tensor(&b)));
    }

    #[test]
    fn degeneration_of_x4() {
        for f in [q(), Field::prime(7).unwrap()] {
            let a = truncated_polynomial(f, 4);
            let oa = OrientedAlgebra::new(a, unit_vector(f, 4, 3)).unwrap();
            let aug = AugmentedAlgebra::new(oa, unit_vector(f, 4, 0)).unwrap();
            let deg = degeneration_to_cw(&aug).unwrap();
            let zero = deg.family.specialize(&f.zero()).unwrap();
            for i in 2..4 {
                for j in 2..4 {
                    assert!(zero.algebra.basis_product(i, j)[2..].iter().all(Scalar::is_zero));
                }
            }
            assert_eq!(deg.invariants.rank, 2);
            let one = deg.family.specialize(&f.one()).unwrap();
            let adapted = aug.algebra().base_change(&deg.decomposition.adapted_basis, None).unwrap();
            assert_eq!(one.algebra.constants(), adapted.constants());
            for c in [1, 2, 3] {
                assert!(gm_rescale_check(&deg.family, &f.from_i64(c)).unwrap());
            }
            assert!(matches!(gm_rescale_check(&deg.family, &f.zero()), Err(Error::ZeroScalar)));
        }
    }

    #[test]
    fn reduced_limits() {
        for n in 1..=3 {
            let found = (0..5).find_map(|s| reduced_degeneration(q(), n, 100 + s).ok());
            let r = found.expect("a generic sample");
            assert_eq!(r.hilbert, vec![1, n, 1, 0]);
            assert_eq!(r.limit.algebra.dim(), n + 2);
        }
        // four collinear points in the plane
        let f = q();
        let pts: Vec<Vector> = (1..=4).map(|i| vec![f.from_i64(i), f.from_i64(2 * i)]).collect();
        assert!(matches!(degeneration_of_points(f, 2, pts, 0), Err(Error::GenericityFailure(_))));
    }
}
