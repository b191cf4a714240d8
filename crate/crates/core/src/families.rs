//! One-parameter families of algebras over `k[t]`.

use serde::Serialize;

use crate::algebra::{table, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::frobenius::{AugmentedAlgebra, Glue, NonUnitalOriented, OrientedAlgebra, Summand};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Coefficient, Field, Scalar, TPoly};

/// Structure constants in `k[t]`, validated as polynomial identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFamily {
    pub field: Field,
    pub labels: Vec<String>,
    pub constants: Vec<TPoly>,
    pub unit: Vec<TPoly>,
    pub orientation: Option<Vec<TPoly>>,
    pub augmentations: Vec<(String, Vec<TPoly>)>,
}

/// A fiber of a family with its evaluated functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub algebra: FiniteAlgebra,
    pub orientation: Option<Vector>,
    pub augmentations: Vec<(String, Vector)>,
}

impl Fiber {
    pub fn oriented(&self) -> Result<OrientedAlgebra> {
        let phi = self
            .orientation
            .clone()
            .ok_or_else(|| Error::BadFamily("family carries no orientation".into()))?;
        OrientedAlgebra::new(self.algebra.clone(), phi)
    }

    pub fn augmentation(&self, name: &str) -> Result<&Vector> {
        self.augmentations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::BadFamily(format!("no augmentation named {name}")))
    }

    pub fn augmented(&self, name: &str) -> Result<AugmentedAlgebra> {
        AugmentedAlgebra::new(self.oriented()?, self.augmentation(name)?.clone())
    }
}

fn eval_vec(v: &[TPoly], c: &Scalar) -> Result<Vector> {
    v.iter().map(|p| p.eval(c)).collect()
}

fn dot_t(field: Field, a: &[TPoly], b: &[TPoly]) -> TPoly {
    a.iter().zip(b).fold(TPoly::zero(field), |acc, (x, y)| &acc + &(x * y))
}

/// Determinant of a square matrix over a commutative coefficient ring, by
/// expansion over column subsets.
pub fn det_generic<C: Coefficient>(field: Field, m: &[Vec<C>]) -> C {
    let n = m.len();
    let mut dp: Vec<C> = vec![C::zero_in(field); 1 << n];
    dp[0] = C::one_in(field);
    for mask in 0usize..(1 << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || m[r][col].is_zero() {
                continue;
            }
            let mut term = dp[mask].times(&m[r][col]);
            if (mask >> (col + 1)).count_ones() % 2 == 1 {
                term = term.negated();
            }
            let next = mask | (1 << col);
            dp[next] = dp[next].plus(&term);
        }
    }
    dp[(1 << n) - 1].clone()
}

impl AlgebraFamily {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: Vec<TPoly>,
        unit: Vec<TPoly>,
        orientation: Option<Vec<TPoly>>,
        augmentations: Vec<(String, Vec<TPoly>)>,
    ) -> Result<AlgebraFamily> {
        let d = labels.len();
        if constants.len() != d * d * d || unit.len() != d {
            return Err(Error::DimensionMismatch("family table sizes".into()));
        }
        let bad = |e: Error| Error::BadFamily(e.to_string());
        table::check_commutative(d, &constants).map_err(bad)?;
        table::check_associative(field, d, &constants).map_err(bad)?;
        table::check_unit(field, d, &constants, &unit).map_err(bad)?;
        let fam = AlgebraFamily {
            field,
            labels,
            constants,
            unit,
            orientation,
            augmentations,
        };
        if let Some(phi) = &fam.orientation {
            if phi.len() != d {
                return Err(Error::DimensionMismatch("family orientation length".into()));
            }
        }
        for (name, e) in &fam.augmentations {
            if !fam.is_augmentation(e) {
                return Err(Error::BadFamily(format!("{name} is not an augmentation over k[t]")));
            }
        }
        Ok(fam)
    }

    /// The constant family on an augmented algebra.
    pub fn constant(t: &AugmentedAlgebra) -> AlgebraFamily {
        let lift = |v: &[Scalar]| v.iter().map(TPoly::lift).collect::<Vec<_>>();
        AlgebraFamily {
            field: t.field(),
            labels: t.algebra().labels().to_vec(),
            constants: lift(t.algebra().constants()),
            unit: lift(t.algebra().unit()),
            orientation: Some(lift(&t.oa.phi)),
            augmentations: vec![("e".into(), lift(&t.e))],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn multiply(&self, a: &[TPoly], b: &[TPoly]) -> Vec<TPoly> {
        table::multiply(self.field, self.dim(), &self.constants, a, b)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<TPoly> {
        table::basis_product(self.dim(), &self.constants, i, j)
    }

    fn is_augmentation(&self, e: &[TPoly]) -> bool {
        let d = self.dim();
        e.len() == d
            && dot_t(self.field, e, &self.unit) == TPoly::one(self.field)
            && (0..d).all(|i| (i..d).all(|j| dot_t(self.field, e, &self.basis_product(i, j)) == &e[i] * &e[j]))
    }

    pub fn augmentation(&self, name: &str) -> Result<&Vec<TPoly>> {
        self.augmentations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::BadFamily(format!("no augmentation named {name}")))
    }

    pub fn with_augmentations(mut self, augs: Vec<(String, Vec<TPoly>)>) -> Result<AlgebraFamily> {
        for (name, e) in &augs {
            if !self.is_augmentation(e) {
                return Err(Error::BadFamily(format!("{name} is not an augmentation over k[t]")));
            }
        }
        self.augmentations = augs;
        Ok(self)
    }

    /// Gram matrix of `B_φ` over `k[t]`.
    pub fn gram(&self) -> Result<Vec<Vec<TPoly>>> {
        let phi = self
            .orientation
            .as_ref()
            .ok_or_else(|| Error::BadFamily("family carries no orientation".into()))?;
        let d = self.dim();
        Ok((0..d)
            .map(|i| (0..d).map(|j| dot_t(self.field, phi, &self.basis_product(i, j))).collect())
            .collect())
    }

    /// `e*(1)` over `k[t]` by Cramer's rule; the Gram determinant must be a
    /// nonzero constant.
    pub fn socle_generator(&self, name: &str) -> Result<Vec<TPoly>> {
        let e = self.augmentation(name)?.clone();
        let g = self.gram()?;
        let det = det_generic(self.field, &g);
        let inv = det
            .as_constant()
            .and_then(|c| c.inv())
            .ok_or_else(|| Error::BadFamily(format!("det B_phi = {det} is not a unit of k[t]")))?;
        let d = self.dim();
        Ok((0..d)
            .map(|i| {
                let mut gi = g.clone();
                for (r, row) in gi.iter_mut().enumerate() {
                    row[i] = e[r].clone();
                }
                det_generic(self.field, &gi).scale(&inv)
            })
            .collect())
    }

    /// `e(e*(1)) = 0` as a polynomial identity.
    pub fn is_isotropic(&self, name: &str) -> Result<bool> {
        let x = self.socle_generator(name)?;
        Ok(dot_t(self.field, self.augmentation(name)?, &x).is_zero())
    }

    pub fn specialize(&self, c: &Scalar) -> Result<Fiber> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", c.field(), self.field)));
        }
        let constants = eval_vec(&self.constants, c)?;
        let unit = eval_vec(&self.unit, c)?;
        // the identities checked on the family hold in every fiber
        let algebra = FiniteAlgebra::from_constants_unchecked(self.field, self.labels.clone(), constants, unit);
        let orientation = self.orientation.as_ref().map(|p| eval_vec(p, c)).transpose()?;
        let augmentations = self
            .augmentations
            .iter()
            .map(|(n, e)| Ok((n.clone(), eval_vec(e, c)?)))
            .collect::<Result<_>>()?;
        Ok(Fiber {
            algebra,
            orientation,
            augmentations,
        })
    }
}

/// `k[x, t]/((x − t)^2 x^2)` on the basis `1, x, x^2, x^3`, with `φ = (x^3)*`
/// and the augmentations `const: x ↦ 0` and `mv: x ↦ t`.
pub fn robber_family(field: Field) -> AlgebraFamily {
    let t = TPoly::t(field);
    let zero = TPoly::zero(field);
    // x · (a_0, a_1, a_2, a_3), using x^4 = 2t x^3 − t^2 x^2
    let two_t = t.scale(&field.from_i64(2));
    let t2 = &t * &t;
    let x_times = |v: &[TPoly]| -> Vec<TPoly> {
        let top = v[3].clone();
        vec![zero.clone(), v[0].clone(), &v[1] - &(&t2 * &top), &v[2] + &(&two_t * &top)]
    };
    let mut powers: Vec<Vec<TPoly>> = vec![(0..4).map(|k| if k == 0 { TPoly::one(field) } else { zero.clone() }).collect()];
    for k in 1..7 {
        let next = x_times(&powers[k - 1]);
        powers.push(next);
    }
    let d = 4;
    let mut c = vec![zero.clone(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                c[table::idx(d, i, j, k)] = powers[i + j][k].clone();
            }
        }
    }
    let labels = vec!["1".into(), "x".into(), "x^2".into(), "x^3".into()];
    let e = |k: usize| -> Vec<TPoly> { (0..4).map(|i| if i == k { TPoly::one(field) } else { zero.clone() }).collect() };
    let mv = vec![TPoly::one(field), t.clone(), t2.clone(), &t2 * &t];
    AlgebraFamily::new(
        field,
        labels,
        c,
        e(0),
        Some(e(3)),
        vec![("const".into(), e(0)), ("mv".into(), mv)],
    )
    .expect("robber family is valid")
}

/// The two connected-sum homotopies of `T` with the robber family.
#[derive(Clone, Debug)]
pub struct HomotopyFamilies {
    pub h_const: AlgebraFamily,
    pub h_mv: AlgebraFamily,
}

/// `T # ℛ` over `k[t]`, glued along `e^const`; `h_const` and `h_mv` share
/// constants and orientation and carry the transported `e^const`, `e^mv`.
pub fn homotopy_families(t: &AugmentedAlgebra) -> Result<HomotopyFamilies> {
    let r = robber_family(t.field());
    let socle = r.socle_generator("const")?;
    let summand = Summand {
        labels: r.labels.clone(),
        c: r.constants.clone(),
        unit: r.unit.clone(),
        phi: r.orientation.clone().unwrap(),
        e: r.augmentation("const")?.clone(),
        socle,
    };
    let glue = Glue::new(t, summand)?;
    let mv = glue.transport_second(r.augmentation("mv")?);
    let base = AlgebraFamily::new(
        t.field(),
        glue.labels.clone(),
        glue.c.clone(),
        glue.unit.clone(),
        Some(glue.phi.clone()),
        vec![],
    )?;
    let h_const = base.clone().with_augmentations(vec![("e".into(), glue.e.clone())])?;
    let h_mv = base.with_augmentations(vec![("e".into(), mv)])?;
    Ok(HomotopyFamilies { h_const, h_mv })
}

/// A non-unital family with a constant invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUnitalFamily {
    pub labels: Vec<String>,
    pub constants: Vec<TPoly>,
    pub form: BilinearForm,
}

impl NonUnitalFamily {
    pub fn specialize(&self, c: &Scalar) -> Result<NonUnitalOriented> {
        NonUnitalOriented::new(self.labels.clone(), eval_vec(&self.constants, c)?, self.form.clone())
    }

    /// `B(xy, z) = B(x, yz)` on basis triples, as polynomial identities.
    pub fn is_invariant(&self) -> bool {
        let field = self.form.field();
        let d = self.labels.len();
        let g: Vec<Vec<TPoly>> = self
            .form
            .gram()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(TPoly::lift).collect())
            .collect();
        let b = |u: &[TPoly], v: &[TPoly]| -> TPoly {
            let gv: Vec<TPoly> = g.iter().map(|row| dot_t(field, row, v)).collect();
            dot_t(field, u, &gv)
        };
        let e = |i: usize| -> Vec<TPoly> { (0..d).map(|k| if k == i { TPoly::one(field) } else { TPoly::zero(field) }).collect() };
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let xy = table::basis_product(d, &self.constants, i, j);
                    let yz = table::basis_product(d, &self.constants, j, k);
                    b(&xy, &e(k)) == b(&e(i), &yz)
                })
            })
        })
    }
}

/// Multiplication scaled by `t`, form unchanged.
pub fn scale_multiplication_family(nu: &NonUnitalOriented) -> NonUnitalFamily {
    NonUnitalFamily {
        labels: nu.labels.clone(),
        constants: nu.c.iter().map(|s| TPoly::monomial(s.clone(), 1)).collect(),
        form: nu.form.clone(),
    }
}

/// Checks that `ψ(1) = 1`, `ψ(x) = c^{-2} x`, `ψ(v) = c^{-1} v` is an algebra
/// isomorphism from the fiber at 1 to the fiber at `c`, for a family of the
/// shape `(r + sx, v)(r' + s'x, v') = (rr' + (sr' + s'r + B(v, v'))x, r'v + rv' + t·vv')`.
pub fn gm_rescale_check(f: &AlgebraFamily, c: &Scalar) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    check_cw_shape(f)?;
    let field = f.field;
    let d = f.dim();
    let cinv = c.inv().unwrap();
    let mut psi = Matrix::zeros(field, d, d);
    psi.set(0, 0, field.one());
    psi.set(1, 1, &cinv * &cinv);
    for i in 2..d {
        psi.set(i, i, cinv.clone());
    }
    let one = f.specialize(&field.one())?;
    let at_c = f.specialize(c)?;
    Ok(one.algebra.is_isomorphism(&at_c.algebra, &psi))
}

/// Verifies the `(1, x, V)` shape, returning `BadShape` otherwise.
pub fn check_cw_shape(f: &AlgebraFamily) -> Result<()> {
    let field = f.field;
    let d = f.dim();
    if d < 2 {
        return Err(Error::BadShape("dimension below 2".into()));
    }
    let unit: Vec<TPoly> = (0..d).map(|k| if k == 0 { TPoly::one(field) } else { TPoly::zero(field) }).collect();
    if f.unit != unit {
        return Err(Error::BadShape("unit is not the first basis vector".into()));
    }
    let t = TPoly::t(field);
    for i in 1..d {
        for j in i..d {
            let p = f.basis_product(i, j);
            let ok = if i == 1 {
                p.iter().all(TPoly::is_zero)
            } else {
                p[0].is_zero()
                    && p[1].as_constant().is_some()
                    && p[2..].iter().all(|q| q.is_zero() || (q.coeff(0).is_zero() && q.degree() == Some(1) && q == &t.scale(&q.coeff(1))))
            };
            if !ok {
                return Err(Error::BadShape(format!("product of basis elements {i} and {j}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::linalg::unit_vector;

    fn q() -> Field {
        Field::Rationals
    }

    fn tp(f: Field, c: &[i64]) -> TPoly {
        TPoly::new(f, c.iter().map(|&x| f.from_i64(x)).collect()).unwrap()
    }

    #[test]
    fn robber_relation() {
        let f = q();
        let r = robber_family(f);
        // x^3 · x = 2t x^3 − t^2 x^2
        let p = r.basis_product(3, 1);
        assert_eq!(p, vec![tp(f, &[]), tp(f, &[]), tp(f, &[0, 0, -1]), tp(f, &[0, 2])]);
        let g = r.gram().unwrap();
        assert_eq!(g[3][3], tp(f, &[0, 0, 0, 4]));
    }

    #[test]
    fn robber_socles() {
        let f = q();
        let r = robber_family(f);
        let s = r.socle_generator("const").unwrap();
        assert_eq!(s, vec![tp(f, &[]), tp(f, &[0, 0, 1]), tp(f, &[0, -2]), tp(f, &[1])]);
        let s = r.socle_generator("mv").unwrap();
        assert_eq!(s, vec![tp(f, &[]), tp(f, &[]), tp(f, &[0, -1]), tp(f, &[1])]);
        assert!(r.is_isotropic("const").unwrap());
        assert!(r.is_isotropic("mv").unwrap());
    }

    #[test]
    fn robber_fiber_at_zero() {
        let f = Field::prime(7).unwrap();
        let fib = robber_family(f).specialize(&f.zero()).unwrap();
        assert_eq!(fib.algebra.constants(), truncated_polynomial(f, 4).constants());
        assert_eq!(fib.orientation.unwrap(), unit_vector(f, 4, 3));
    }

    #[test]
    fn scaled_multiplication() {
        let f = q();
        let t = crate::frobenius::form_to_algebra(&BilinearForm::from_i64(f, &[&[1, 0], &[0, 2]]).unwrap()).unwrap();
        let a = truncated_polynomial(f, 4);
        let c4 = AugmentedAlgebra::new(OrientedAlgebra::new(a, unit_vector(f, 4, 3)).unwrap(), unit_vector(f, 4, 0)).unwrap();
        for aug in [t, c4] {
            let nu = crate::frobenius::decompose_augmented(&aug).unwrap().nonunital;
            let fam = scale_multiplication_family(&nu);
            assert!(fam.is_invariant());
            assert_eq!(fam.specialize(&f.one()).unwrap(), nu);
            assert!(fam.specialize(&f.zero()).unwrap().c.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinant_generic() {
        let f = q();
        let m = vec![vec![tp(f, &[0, 1]), tp(f, &[1])], vec![tp(f, &[1]), tp(f, &[0, 1])]];
        assert_eq!(det_generic(f, &m), tp(f, &[-1, 0, 1]));
    }
}
