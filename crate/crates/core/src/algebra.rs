//! Finite-dimensional commutative unital algebras by structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, unit_vector, Matrix, Subspace, Vector};
use crate::scalar::{Coefficient, Field, Scalar};

/// Structure-constant arithmetic shared by algebras over a field and
/// families over `k[t]`. Tables are flat, indexed `(i * d + j) * d + k`.
pub mod table {
    use super::*;

    pub fn idx(d: usize, i: usize, j: usize, k: usize) -> usize {
        (i * d + j) * d + k
    }

    pub fn multiply<C: Coefficient>(field: Field, d: usize, c: &[C], a: &[C], b: &[C]) -> Vec<C> {
        let mut out = vec![C::zero_in(field); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].times(&b[j]);
                for k in 0..d {
                    let cij = &c[idx(d, i, j, k)];
                    if !cij.is_zero() {
                        out[k] = out[k].plus(&ab.times(cij));
                    }
                }
            }
        }
        out
    }

    pub fn basis_product<C: Coefficient>(d: usize, c: &[C], i: usize, j: usize) -> Vec<C> {
        c[idx(d, i, j, 0)..idx(d, i, j, 0) + d].to_vec()
    }

    pub fn check_commutative<C: Coefficient>(d: usize, c: &[C]) -> Result<()> {
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    if c[idx(d, i, j, k)] != c[idx(d, j, i, k)] {
                        return Err(Error::NotCommutative(i, j));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_associative<C: Coefficient>(field: Field, d: usize, c: &[C]) -> Result<()> {
        let basis: Vec<Vec<C>> = (0..d)
            .map(|i| (0..d).map(|k| if k == i { C::one_in(field) } else { C::zero_in(field) }).collect())
            .collect();
        for i in 0..d {
            for j in i..d {
                let ij = basis_product(d, c, i, j);
                for k in 0..d {
                    let left = multiply(field, d, c, &ij, &basis[k]);
                    let jk = basis_product(d, c, j, k);
                    let right = multiply(field, d, c, &basis[i], &jk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit<C: Coefficient>(field: Field, d: usize, c: &[C], unit: &[C]) -> Result<()> {
        for i in 0..d {
            let e: Vec<C> = (0..d).map(|k| if k == i { C::one_in(field) } else { C::zero_in(field) }).collect();
            if multiply(field, d, c, unit, &e) != e {
                return Err(Error::BadUnit(i));
            }
        }
        Ok(())
    }
}

/// A commutative, associative, unital algebra of dimension `d` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    labels: Vec<String>,
    c: Vec<Scalar>,
    unit: Vector,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity and the unit. Without an
    /// explicit unit one is solved for; failing that, `NotUnital`.
    pub fn from_constants(field: Field, labels: Vec<String>, c: Vec<Scalar>, unit: Option<Vector>) -> Result<FiniteAlgebra> {
        let d = labels.len();
        if c.len() != d * d * d {
            return Err(Error::DimensionMismatch(format!(
                "expected {} structure constants, got {}",
                d * d * d,
                c.len()
            )));
        }
        for s in &c {
            field.check(s)?;
        }
        table::check_commutative(d, &c)?;
        table::check_associative(field, d, &c)?;
        let unit = match unit {
            Some(u) => {
                if u.len() != d {
                    return Err(Error::DimensionMismatch("unit vector length".into()));
                }
                for s in &u {
                    field.check(s)?;
                }
                table::check_unit(field, d, &c, &u)?;
                u
            }
            None => solve_unit(field, d, &c)?,
        };
        Ok(FiniteAlgebra { field, labels, c, unit })
    }

    pub(crate) fn from_constants_unchecked(field: Field, labels: Vec<String>, c: Vec<Scalar>, unit: Vector) -> FiniteAlgebra {
        debug_assert!(table::check_unit(field, labels.len(), &c, &unit).is_ok());
        FiniteAlgebra { field, labels, c, unit }
    }

    /// Builds the table from a closure giving `e_i e_j` for `i ≤ j`.
    pub fn from_products(
        field: Field,
        labels: Vec<String>,
        unit: Option<Vector>,
        mut prod: impl FnMut(usize, usize) -> Vector,
    ) -> Result<FiniteAlgebra> {
        let d = labels.len();
        let mut c = vec![field.zero(); d * d * d];
        for i in 0..d {
            for j in i..d {
                let v = prod(i, j);
                for k in 0..d {
                    c[table::idx(d, i, j, k)] = v[k].clone();
                    c[table::idx(d, j, i, k)] = v[k].clone();
                }
            }
        }
        FiniteAlgebra::from_constants(field, labels, c, unit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FiniteAlgebra {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[table::idx(self.dim(), i, j, k)]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.dim())));
        }
        for s in v {
            self.field.check(s)?;
        }
        Ok(())
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
        self.check_vec(a)?;
        self.check_vec(b)?;
        Ok(table::multiply(self.field, self.dim(), &self.c, a, b))
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        table::basis_product(self.dim(), &self.c, i, j)
    }

    pub fn power(&self, a: &[Scalar], e: u32) -> Result<Vector> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `a`; column `j` holds `a·e_j`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Result<Matrix> {
        self.check_vec(a)?;
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let v = table::multiply(self.field, d, &self.c, a, &self.basis_vector(j));
            for (k, x) in v.into_iter().enumerate() {
                m.set(k, j, x);
            }
        }
        Ok(m)
    }

    /// The ideal generated by `gens`.
    pub fn ideal_span(&self, gens: &[Vector]) -> Result<Subspace> {
        let mut vecs = Vec::new();
        for g in gens {
            for j in 0..self.dim() {
                vecs.push(self.multiply(g, &self.basis_vector(j))?);
            }
        }
        Subspace::span(self.field, self.dim(), &vecs)
    }

    /// `{a : a·s = 0 for all s in sub}`.
    pub fn annihilator(&self, sub: &Subspace) -> Result<Subspace> {
        let d = self.dim();
        if sub.ambient_dim() != d {
            return Err(Error::DimensionMismatch("subspace ambient dimension".into()));
        }
        let mut rows = Vec::new();
        for s in sub.basis() {
            rows.extend(self.mult_matrix(&s)?.to_rows());
        }
        if rows.is_empty() {
            return Ok(Subspace::full(self.field, d));
        }
        let m = Matrix::from_rows_with_cols(self.field, &rows, d)?;
        Subspace::span(self.field, d, &m.nullspace())
    }

    /// Evaluates the linear functional `phi` (dual-basis coordinates) on `v`.
    pub fn apply(&self, phi: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(phi, v)
    }

    /// Is `m` (column `i` = image of `e_i`) a unital algebra isomorphism
    /// from `self` onto `target`?
    pub fn is_isomorphism(&self, target: &FiniteAlgebra, m: &Matrix) -> bool {
        if m.rows() != target.dim() || m.cols() != self.dim() || !m.is_square() || m.rank() != m.rows() {
            return false;
        }
        if m.mul_vec(&self.unit).ok().as_ref() != Some(&target.unit) {
            return false;
        }
        let img: Vec<Vector> = (0..self.dim()).map(|i| m.column(i)).collect();
        (0..self.dim()).all(|i| {
            (i..self.dim()).all(|j| {
                let lhs = m.mul_vec(&self.basis_product(i, j)).unwrap();
                let rhs = target.multiply(&img[i], &img[j]).unwrap();
                lhs == rhs
            })
        })
    }

    /// Whether `eps` is a unital algebra map to the field.
    pub fn is_character(&self, eps: &[Scalar]) -> bool {
        if eps.len() != self.dim() || !dot(eps, &self.unit).is_one() {
            return false;
        }
        (0..self.dim()).all(|i| {
            (i..self.dim()).all(|j| dot(eps, &self.basis_product(i, j)) == &eps[i] * &eps[j])
        })
    }

    /// Re-expresses the algebra in the basis given by the rows of `p`.
    pub fn base_change(&self, p: &Matrix, labels: Option<Vec<String>>) -> Result<FiniteAlgebra> {
        let d = self.dim();
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch("change-of-basis matrix".into()));
        }
        let pt = p.transpose();
        let pt_inv = pt.inverse()?;
        let rows = p.to_rows();
        let labels = labels.unwrap_or_else(|| (1..=d).map(|i| format!("f{i}")).collect());
        let unit = pt_inv.mul_vec(&self.unit)?;
        let mut c = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in i..d {
                let v = pt_inv.mul_vec(&self.multiply(&rows[i], &rows[j])?)?;
                for k in 0..d {
                    c[table::idx(d, i, j, k)] = v[k].clone();
                    c[table::idx(d, j, i, k)] = v[k].clone();
                }
            }
        }
        Ok(FiniteAlgebra::from_constants_unchecked(self.field, labels, c, unit))
    }

    /// Coordinates in the old basis -> coordinates in the basis `rows(p)`.
    pub fn coordinates_in(p: &Matrix, v: &[Scalar]) -> Result<Vector> {
        p.transpose().solve(v)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim();
        let mut constants = Vec::new();
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let s = self.constant(i, j, k);
                    if !s.is_zero() {
                        constants.push((i, j, k, s.clone()));
                    }
                }
            }
        }
        AlgebraJson {
            field: self.field,
            labels: self.labels.clone(),
            unit: self.unit.clone(),
            constants,
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<FiniteAlgebra> {
        let d = j.labels.len();
        let mut c = vec![j.field.zero(); d * d * d];
        for (i, jj, k, s) in &j.constants {
            if *i >= d || *jj >= d || *k >= d {
                return Err(Error::DimensionMismatch("structure constant index".into()));
            }
            let s = coerce(j.field, s)?;
            c[table::idx(d, *i, *jj, *k)] = s.clone();
            c[table::idx(d, *jj, *i, *k)] = s;
        }
        let unit = j.unit.iter().map(|s| coerce(j.field, s)).collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::from_constants(j.field, j.labels.clone(), c, Some(unit))
    }
}

fn coerce(field: Field, s: &Scalar) -> Result<Scalar> {
    // integers in JSON parse as rationals; reinterpret in the target field
    if s.field() == field {
        return Ok(s.clone());
    }
    field.parse_scalar(&s.to_string())
}

fn solve_unit(field: Field, d: usize, c: &[Scalar]) -> Result<Vector> {
    // u with u·e_i = e_i for all i: d^2 equations in d unknowns
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..d {
        for k in 0..d {
            rows.push((0..d).map(|j| c[table::idx(d, j, i, k)].clone()).collect::<Vector>());
            rhs.push(if i == k { field.one() } else { field.zero() });
        }
    }
    if d == 0 {
        return Err(Error::NotUnital);
    }
    let m = Matrix::from_rows_with_cols(field, &rows, d)?;
    m.solve_any(&rhs)?.ok_or(Error::NotUnital)
}

/// Serialized form of an algebra; constants are sparse with `i ≤ j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: Field,
    pub labels: Vec<String>,
    pub unit: Vector,
    pub constants: Vec<(usize, usize, usize, Scalar)>,
}

/// `A × B` in the concatenated basis.
pub fn direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
    }
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let mut c = vec![a.field.zero(); d * d * d];
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                c[table::idx(d, i, j, k)] = a.constant(i, j, k).clone();
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for k in 0..db {
                c[table::idx(d, da + i, da + j, da + k)] = b.constant(i, j, k).clone();
            }
        }
    }
    let labels = a
        .labels
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(b.labels.iter().map(|l| format!("(0,{l})")))
        .collect();
    let unit = a.unit.iter().chain(&b.unit).cloned().collect();
    Ok(FiniteAlgebra::from_constants_unchecked(a.field, labels, c, unit))
}

/// The field itself as a one-dimensional algebra.
pub fn ground_field(field: Field) -> FiniteAlgebra {
    FiniteAlgebra::from_constants_unchecked(field, vec!["1".into()], vec![field.one()], vec![field.one()])
}

/// `k[x]/(x^n)` in the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize) -> FiniteAlgebra {
    assert!(n >= 1);
    let mut c = vec![field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                c[table::idx(n, i, j, i + j)] = field.one();
            }
        }
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    FiniteAlgebra::from_constants_unchecked(field, labels, c, unit_vector(field, n, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn dual_numbers() {
        let a = truncated_polynomial(q(), 2);
        let x = a.basis_vector(1);
        assert!(a.multiply(&x, &x).unwrap().iter().all(Scalar::is_zero));
        let ideal = a.ideal_span(&[x.clone()]).unwrap();
        assert_eq!(ideal.dim(), 1);
        let ann = a.annihilator(&ideal).unwrap();
        assert_eq!(ann, ideal);
        assert!(a.is_character(&[q().one(), q().zero()]));
    }

    #[test]
    fn rejects_bad_tables() {
        let f = q();
        // e0 e1 = e1 but e1 e0 = 0
        let mut c = vec![f.zero(); 8];
        c[table::idx(2, 0, 0, 0)] = f.one();
        c[table::idx(2, 0, 1, 1)] = f.one();
        assert!(matches!(
            FiniteAlgebra::from_constants(f, vec!["a".into(), "b".into()], c.clone(), None),
            Err(Error::NotCommutative(0, 1))
        ));
        c[table::idx(2, 1, 0, 1)] = f.one();
        let ok = FiniteAlgebra::from_constants(f, vec!["a".into(), "b".into()], c.clone(), None).unwrap();
        assert_eq!(ok.unit(), &vec![f.one(), f.zero()]);
        assert!(matches!(
            FiniteAlgebra::from_constants(f, vec!["a".into(), "b".into()], c.clone(), Some(vec![f.zero(), f.one()])),
            Err(Error::BadUnit(_))
        ));
        // non-associative: e1 e1 = e0 on top of the above, with e0 not idempotent on e1 correctly
        let mut bad = vec![f.zero(); 8];
        bad[table::idx(2, 1, 1, 0)] = f.one();
        bad[table::idx(2, 0, 1, 1)] = f.one();
        bad[table::idx(2, 1, 0, 1)] = f.one();
        assert!(matches!(
            FiniteAlgebra::from_constants(f, vec!["a".into(), "b".into()], bad, None),
            Err(Error::NotAssociative(..))
        ));
        let zero = FiniteAlgebra::from_constants(f, vec!["a".into()], vec![f.zero()], None);
        assert!(matches!(zero, Err(Error::NotUnital)));
    }

    #[test]
    fn product_and_base_change() {
        let f = Field::prime(7).unwrap();
        let a = truncated_polynomial(f, 3);
        let b = ground_field(f);
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.unit(), &vec![f.one(), f.zero(), f.zero(), f.one()]);
        let m = Matrix::from_i64(f, &[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 2, 1, 0], &[0, 0, 3, 1]]);
        let pb = p.base_change(&m, None).unwrap();
        let check = FiniteAlgebra::from_constants(f, pb.labels().to_vec(), pb.constants().to_vec(), Some(pb.unit().clone()));
        assert!(check.is_ok());
        // rows of m map new basis to old coordinates
        assert!(pb.is_isomorphism(&p, &m.transpose()));
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteAlgebra::from_json(&back).unwrap(), p);
    }
}
