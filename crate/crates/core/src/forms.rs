//! Symmetric bilinear forms and the constructions built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{square_class, Field, Scalar, TPoly};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct BilinearForm {
    gram: Matrix,
}

impl TryFrom<Matrix> for BilinearForm {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        BilinearForm::new(m)
    }
}

impl From<BilinearForm> for Matrix {
    fn from(b: BilinearForm) -> Matrix {
        b.gram
    }
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<BilinearForm> {
        if !gram.is_square() {
            return Err(Error::BadForm(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::BadForm("Gram matrix is not symmetric".into()));
        }
        Ok(BilinearForm { gram })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<BilinearForm> {
        BilinearForm::new(Matrix::from_i64(field, rows))
    }

    pub fn zero(field: Field, d: usize) -> BilinearForm {
        BilinearForm { gram: Matrix::zeros(field, d, d) }
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram.mul_vec(v).expect("vector length");
        u.iter().zip(&gv).fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn radical(&self) -> Subspace {
        Subspace::span(self.field(), self.dim(), &self.gram.nullspace()).expect("kernel vectors")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    pub fn det(&self) -> Scalar {
        self.gram.det().expect("square")
    }

    /// `{v | B(v, w) = 0 for all w ∈ W}`.
    pub fn orth_complement(&self, w: &Subspace) -> Result<Subspace> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate("orthogonal complement needs a non-degenerate form".into()));
        }
        self.perp(w)
    }

    /// Orthogonal of `W` without the non-degeneracy requirement.
    pub fn perp(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch("subspace ambient dimension".into()));
        }
        if w.dim() == 0 {
            return Ok(Subspace::full(self.field(), self.dim()));
        }
        let rows = w.basis_matrix().mul(&self.gram)?;
        Subspace::span(self.field(), self.dim(), &rows.nullspace())
    }

    pub fn is_isotropic(&self, w: &Subspace) -> bool {
        let b = w.basis();
        b.iter().all(|u| b.iter().all(|v| self.eval(u, v).is_zero()))
    }

    /// The form restricted to `W`, in the basis of `W`'s stored rows.
    pub fn restrict(&self, w: &Subspace) -> BilinearForm {
        self.restrict_to(w.basis_matrix())
    }

    /// Gram matrix in the basis given by the rows of `p`.
    pub fn restrict_to(&self, p: &Matrix) -> BilinearForm {
        BilinearForm {
            gram: self.gram.congruent(p).expect("shapes"),
        }
    }

    pub fn direct_sum(&self, other: &BilinearForm) -> BilinearForm {
        BilinearForm {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    /// Whether `P·self·Pᵀ = other` for the given `P`.
    pub fn is_congruent_via(&self, other: &BilinearForm, p: &Matrix) -> bool {
        p.is_square() && p.rank() == p.rows() && self.gram.congruent(p).ok().as_ref() == Some(&other.gram)
    }
}

/// Evenness: `B(v, v) ∈ 2k` for all `v`. Automatic when 2 is invertible; in
/// characteristic 2 it means the diagonal vanishes.
pub fn is_even(b: &BilinearForm) -> bool {
    b.field().has_half() || (0..b.dim()).all(|i| b.gram.get(i, i).is_zero())
}

/// `Hyp(k^n)`: Gram `[[0, I], [I, 0]]`.
pub fn hyperbolic_form(field: Field, n: usize) -> BilinearForm {
    let mut g = Matrix::zeros(field, 2 * n, 2 * n);
    for i in 0..n {
        g.set(i, n + i, field.one());
        g.set(n + i, i, field.one());
    }
    BilinearForm { gram: g }
}

/// An isometric embedding of an even form into `Hyp(k^d)`. The columns of
/// the returned `2d × d` matrix `E = [A; I]` are the images of the basis,
/// with `A + Aᵀ = B`, so `Eᵀ·G_Hyp·E = B`.
pub fn hyp_embed(b: &BilinearForm) -> Result<Matrix> {
    if !is_even(b) {
        return Err(Error::NotEven("a diagonal entry is nonzero in characteristic 2".into()));
    }
    let (field, d) = (b.field(), b.dim());
    let mut e = Matrix::zeros(field, 2 * d, d);
    let half = field.has_half().then(|| field.from_i64(2).inv().unwrap());
    for i in 0..d {
        for j in 0..d {
            let a = match &half {
                Some(h) => h * b.gram.get(i, j),
                None if i < j => b.gram.get(i, j).clone(),
                None => field.zero(),
            };
            e.set(i, j, a);
        }
        e.set(d + i, i, field.one());
    }
    Ok(e)
}

/// `W^⊥/W` with the induced form, realized on `section`: representatives in
/// `W^⊥` (as rows) of a basis of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surgery {
    pub form: BilinearForm,
    pub section: Matrix,
}

/// Vectors of `big` completing a basis of `small ⊆ big`, chosen greedily
/// from `big`'s canonical basis.
pub fn complement_in(small: &Subspace, big: &Subspace) -> Vec<Vector> {
    let mut acc = small.clone();
    let mut out = Vec::new();
    for v in big.basis() {
        if !acc.contains(&v) {
            acc = acc.sum(&Subspace::span(acc.field(), acc.ambient_dim(), &[v.clone()]).unwrap()).unwrap();
            out.push(v);
        }
    }
    out
}

pub fn surgery(b: &BilinearForm, w: &Subspace) -> Result<Surgery> {
    if !b.is_nondegenerate() {
        return Err(Error::Degenerate("surgery needs a non-degenerate form".into()));
    }
    if !b.is_isotropic(w) {
        return Err(Error::NotIsotropic("B does not vanish on W".into()));
    }
    let wp = b.perp(w)?;
    let section_rows = complement_in(w, &wp);
    let section = Matrix::from_rows_with_cols(b.field(), &section_rows, b.dim())?;
    Ok(Surgery {
        form: b.restrict_to(&section),
        section,
    })
}

/// A symmetric Gram matrix with entries in `k[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFamily {
    pub field: Field,
    pub gram: Vec<Vec<TPoly>>,
}

impl FormFamily {
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn specialize(&self, c: &Scalar) -> Result<BilinearForm> {
        let rows: Vec<Vector> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|p| p.eval(c)).collect::<Result<Vector>>())
            .collect::<Result<_>>()?;
        BilinearForm::new(Matrix::from_rows_with_cols(self.field, &rows, self.dim())?)
    }
}

/// Deformation of a metabolic form to the hyperbolic one.
#[derive(Clone, Debug)]
pub struct MetabolicPath {
    /// Gram `[[0, I], [I, tA]]`.
    pub family: FormFamily,
    /// Rows `l_1..l_n, w_1..w_n` with `B(w_i, l_j) = δ_ij`; the fiber at 1
    /// is the input in this basis.
    pub basis: Matrix,
    pub a: Matrix,
}

pub fn metabolic_path(b: &BilinearForm, l: &Subspace) -> Result<MetabolicPath> {
    let (field, d) = (b.field(), b.dim());
    if l.ambient_dim() != d {
        return Err(Error::DimensionMismatch("Lagrangian ambient dimension".into()));
    }
    if !b.is_nondegenerate() {
        return Err(Error::NotLagrangian("the form is degenerate".into()));
    }
    if !b.is_isotropic(l) || 2 * l.dim() != d {
        return Err(Error::NotLagrangian(format!("dim L = {} in dimension {d}", l.dim())));
    }
    let n = l.dim();
    let ls = l.basis();
    let cs = l.complement_basis();
    // M[k][j] = B(c_k, l_j); w = M^{-1} c gives B(w_i, l_j) = δ_ij
    let mut m = Matrix::zeros(field, n, n);
    for k in 0..n {
        for j in 0..n {
            m.set(k, j, b.eval(&cs[k], &ls[j]));
        }
    }
    let minv = m.inverse()?;
    let c_mat = Matrix::from_rows_with_cols(field, &cs, d)?;
    let w_mat = minv.mul(&c_mat)?;
    let mut rows = ls.clone();
    rows.extend(w_mat.to_rows());
    let basis = Matrix::from_rows_with_cols(field, &rows, d)?;
    let a = b.restrict_to(&w_mat).gram;
    let mut gram = vec![vec![TPoly::zero(field); d]; d];
    for i in 0..n {
        gram[i][n + i] = TPoly::one(field);
        gram[n + i][i] = TPoly::one(field);
        for j in 0..n {
            gram[n + i][n + j] = TPoly::monomial(a.get(i, j).clone(), 1);
        }
    }
    Ok(MetabolicPath {
        family: FormFamily { field, gram },
        basis,
        a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittInvariants {
    pub rank: usize,
    pub det_square_class: Scalar,
    pub signature: Option<i64>,
}

/// Congruence diagonalization: returns `(diag, P)` with `P·G·Pᵀ = diag`.
/// Needs 2 to be invertible.
pub fn diagonalize(b: &BilinearForm) -> Result<(Vec<Scalar>, Matrix)> {
    let field = b.field();
    if !field.has_half() {
        return Err(Error::CharacteristicTwo);
    }
    let d = b.dim();
    let mut g = b.gram.clone();
    let mut p = Matrix::identity(field, d);
    let apply = |g: &mut Matrix, p: &mut Matrix, target: usize, src: usize, c: &Scalar| {
        // basis change e_target += c·e_src
        for j in 0..d {
            let v = p.get(target, j) + &(c * p.get(src, j));
            p.set(target, j, v);
        }
        for j in 0..d {
            let v = g.get(target, j) + &(c * g.get(src, j));
            g.set(target, j, v);
        }
        for i in 0..d {
            let v = g.get(i, target) + &(c * g.get(i, src));
            g.set(i, target, v);
        }
    };
    for k in 0..d {
        if g.get(k, k).is_zero() {
            if let Some(j) = (k + 1..d).find(|&j| !g.get(j, j).is_zero()) {
                apply(&mut g, &mut p, k, j, &field.one());
                if g.get(k, k).is_zero() {
                    // g_kk + 2g_kj + g_jj vanished; undo with the opposite sign
                    apply(&mut g, &mut p, k, j, &field.from_i64(-2));
                }
            } else if let Some(j) = (k + 1..d).find(|&j| !g.get(k, j).is_zero()) {
                // hyperbolic pair: B(e_k + e_j, e_k + e_j) = 2 B(e_k, e_j)
                apply(&mut g, &mut p, k, j, &field.one());
            }
        }
        let pivot = g.get(k, k).clone();
        if pivot.is_zero() {
            continue;
        }
        let inv = pivot.inv().unwrap();
        for i in k + 1..d {
            if !g.get(i, k).is_zero() {
                let c = -(g.get(i, k) * &inv);
                apply(&mut g, &mut p, i, k, &c);
            }
        }
    }
    Ok(((0..d).map(|i| g.get(i, i).clone()).collect(), p))
}

/// Signature over ℚ.
pub fn signature(b: &BilinearForm) -> Result<i64> {
    if b.field() != Field::Rationals {
        return Err(Error::SignatureUnavailable);
    }
    let (diag, _) = diagonalize(b)?;
    Ok(diag.iter().map(|s| s.sign().unwrap_or(0) as i64).sum())
}

/// Rank, determinant square class, and (over ℚ) signature.
pub fn witt_invariants(b: &BilinearForm) -> Result<WittInvariants> {
    if !b.is_nondegenerate() {
        return Err(Error::Degenerate("Witt invariants need a non-degenerate form".into()));
    }
    let det_square_class = if b.dim() == 0 { b.field().one() } else { square_class(&b.det())? };
    let signature = if b.field() == Field::Rationals { Some(signature(b)?) } else { None };
    Ok(WittInvariants {
        rank: b.dim(),
        det_square_class,
        signature,
    })
}

/// Whether the hyperbolic form restricted to `W ⊆ Hyp(k^n)` is
/// non-degenerate.
pub fn gro_member(w: &Subspace, n: usize) -> Result<bool> {
    if w.ambient_dim() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "subspace of k^{} in Hyp(k^{n})",
            w.ambient_dim()
        )));
    }
    Ok(hyperbolic_form(w.field(), n).restrict(w).is_nondegenerate())
}

/// `I + c·E_{row,col}` with `row ≠ col`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elementary {
    pub n: usize,
    pub row: usize,
    pub col: usize,
    pub c: Scalar,
}

impl Elementary {
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::identity(self.c.field(), self.n);
        m.set(self.row, self.col, self.c.clone());
        m
    }

    pub fn inverse(&self) -> Elementary {
        Elementary {
            c: -&self.c,
            ..self.clone()
        }
    }
}

/// Factors `M ∈ SL_n` as `F_m ⋯ F_1` with every `F_i` elementary, using row
/// transvections only.
pub fn elementary_factorization(m: &Matrix) -> Result<Vec<Elementary>> {
    if !m.is_square() || !m.det()?.is_one() {
        return Err(Error::NotSpecialLinear);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut ops: Vec<Elementary> = Vec::new();
    let mut add_row = |a: &mut Matrix, target: usize, src: usize, c: Scalar| {
        if c.is_zero() {
            return;
        }
        for j in 0..n {
            let v = a.get(target, j) + &(&c * a.get(src, j));
            a.set(target, j, v);
        }
        ops.push(Elementary { n, row: target, col: src, c });
    };
    for j in 0..n {
        if a.get(j, j).is_zero() {
            let r = (j + 1..n).find(|&r| !a.get(r, j).is_zero()).expect("invertible");
            add_row(&mut a, j, r, m.field().one());
        }
        let inv = a.get(j, j).inv().unwrap();
        for i in 0..n {
            if i != j && !a.get(i, j).is_zero() {
                let c = -(a.get(i, j) * &inv);
                add_row(&mut a, i, j, c);
            }
        }
    }
    // diagonal with product 1: move each entry down with four shears
    let one = m.field().one();
    for k in 0..n.saturating_sub(1) {
        let x = a.get(k, k).clone();
        if x.is_one() {
            continue;
        }
        let y = a.get(k + 1, k + 1).clone();
        let xinv = x.inv().unwrap();
        add_row(&mut a, k + 1, k, one.clone());
        add_row(&mut a, k, k + 1, &(&one - &x) * &xinv);
        add_row(&mut a, k + 1, k, -&x);
        let top = &(&(&one - &x) * &y) * &xinv;
        let c = -(&top * &(&x * &y).inv().unwrap());
        add_row(&mut a, k, k + 1, c);
    }
    debug_assert_eq!(a, Matrix::identity(m.field(), n));
    // E_k ⋯ E_1 M = I, so M = E_1^{-1} ⋯ E_k^{-1}
    Ok(ops.iter().rev().map(Elementary::inverse).collect())
}

/// `F_m ⋯ F_1` for factors listed `F_1, …, F_m`.
pub fn product_of(field: Field, n: usize, factors: &[Elementary]) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(field, n), |acc, f| f.to_matrix().mul(&acc).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn span(f: Field, n: usize, rows: &[&[i64]]) -> Subspace {
        let v: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Subspace::span(f, n, &v).unwrap()
    }

    #[test]
    fn radicals_and_complements() {
        let h = hyperbolic_form(q(), 1);
        assert_eq!(h.radical().dim(), 0);
        assert!(h.is_nondegenerate());
        assert_eq!(BilinearForm::zero(q(), 2).radical(), Subspace::full(q(), 2));
        let ones = BilinearForm::from_i64(q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(ones.radical(), span(q(), 2, &[&[1, -1]]));
        assert!(BilinearForm::from_i64(q(), &[&[2, 0], &[0, 3]]).unwrap().is_nondegenerate());
        let e1 = span(q(), 2, &[&[1, 0]]);
        assert_eq!(h.orth_complement(&e1).unwrap(), e1);
        assert!(matches!(ones.orth_complement(&e1), Err(Error::Degenerate(_))));
        assert!(BilinearForm::from_i64(q(), &[&[0, 1], &[0, 0]]).is_err());
    }

    #[test]
    fn evenness() {
        let f2 = Field::prime(2).unwrap();
        assert!(is_even(&BilinearForm::from_i64(q(), &[&[1]]).unwrap()));
        assert!(!is_even(&BilinearForm::from_i64(f2, &[&[1, 0], &[0, 1]]).unwrap()));
        assert!(is_even(&BilinearForm::from_i64(f2, &[&[0, 1], &[1, 0]]).unwrap()));
    }

    #[test]
    fn hyperbolic_embeddings() {
        let b = BilinearForm::from_i64(q(), &[&[1]]).unwrap();
        let e = hyp_embed(&b).unwrap();
        assert_eq!(e.column(0), vec![q().from_ratio(1, 2).unwrap(), q().one()]);
        let f2 = Field::prime(2).unwrap();
        let alt = BilinearForm::from_i64(f2, &[&[0, 1], &[1, 0]]).unwrap();
        let e = hyp_embed(&alt).unwrap();
        let back = hyperbolic_form(f2, 2).gram().congruent(&e.transpose()).unwrap();
        assert_eq!(&back, alt.gram());
        assert!(matches!(hyp_embed(&BilinearForm::from_i64(f2, &[&[1]]).unwrap()), Err(Error::NotEven(_))));
        assert_eq!(hyperbolic_form(q(), 0).dim(), 0);
    }

    #[test]
    fn surgeries() {
        let h = hyperbolic_form(q(), 1);
        assert_eq!(surgery(&h, &span(q(), 2, &[&[1, 0]])).unwrap().form.dim(), 0);
        let h2 = hyperbolic_form(q(), 2);
        let s = surgery(&h2, &span(q(), 4, &[&[1, 0, 0, 0]])).unwrap();
        assert_eq!(s.form, hyperbolic_form(q(), 1));
        let id = BilinearForm::from_i64(q(), &[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(surgery(&id, &span(q(), 2, &[&[1, 0]])), Err(Error::NotIsotropic(_))));
    }

    #[test]
    fn metabolic_example() {
        let b = BilinearForm::from_i64(q(), &[&[0, 1], &[1, 5]]).unwrap();
        let path = metabolic_path(&b, &span(q(), 2, &[&[1, 0]])).unwrap();
        assert_eq!(path.family.gram[1][1], TPoly::monomial(q().from_i64(5), 1));
        assert_eq!(path.family.specialize(&q().zero()).unwrap(), hyperbolic_form(q(), 1));
        assert_eq!(&path.family.specialize(&q().one()).unwrap(), &b.restrict_to(&path.basis));
        let h = hyperbolic_form(q(), 2);
        let l = span(q(), 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let p = metabolic_path(&h, &l).unwrap();
        assert!(p.a.is_zero());
        assert!(matches!(
            metabolic_path(&h, &span(q(), 4, &[&[1, 0, 0, 0]])),
            Err(Error::NotLagrangian(_))
        ));
    }

    #[test]
    fn witt_examples() {
        for d in 1..6 {
            let id = BilinearForm::new(Matrix::identity(q(), d)).unwrap();
            assert_eq!(witt_invariants(&id).unwrap().signature, Some(d as i64));
        }
        assert_eq!(signature(&hyperbolic_form(q(), 3)).unwrap(), 0);
        let b = BilinearForm::from_i64(q(), &[&[2, 0], &[0, -3]]).unwrap();
        let w = witt_invariants(&b).unwrap();
        assert_eq!(w.signature, Some(0));
        assert_eq!(w.det_square_class, q().from_i64(-6));
        let f7 = Field::prime(7).unwrap();
        let w7 = witt_invariants(&BilinearForm::from_i64(f7, &[&[3]]).unwrap()).unwrap();
        assert_eq!(w7.signature, None);
        assert!(matches!(signature(&hyperbolic_form(f7, 1)), Err(Error::SignatureUnavailable)));
        assert!(matches!(witt_invariants(&BilinearForm::zero(q(), 1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn gro_examples() {
        assert!(!gro_member(&span(q(), 2, &[&[1, 0]]), 1).unwrap());
        assert!(gro_member(&span(q(), 2, &[&[1, 1]]), 1).unwrap());
        assert!(gro_member(&Subspace::full(q(), 2), 1).unwrap());
        assert!(matches!(gro_member(&Subspace::full(q(), 3), 1), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn elementary_examples() {
        let f = q();
        assert!(elementary_factorization(&Matrix::identity(f, 3)).unwrap().is_empty());
        let shear = Matrix::from_i64(f, &[&[1, 5], &[0, 1]]);
        let fs = elementary_factorization(&shear).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].to_matrix(), shear);
        let cyc = Matrix::from_i64(f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let fs = elementary_factorization(&cyc).unwrap();
        assert!(!fs.is_empty());
        assert_eq!(product_of(f, 3, &fs), cyc);
        assert!(matches!(
            elementary_factorization(&Matrix::from_i64(f, &[&[2, 0], &[0, 1]])),
            Err(Error::NotSpecialLinear)
        ));
    }

    fn small_matrix(d: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..=4, d * d)
    }

    fn to_form(f: Field, d: usize, v: &[i64]) -> BilinearForm {
        let mut g = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in i..d {
                g.set(i, j, f.from_i64(v[i * d + j]));
                g.set(j, i, f.from_i64(v[i * d + j]));
            }
        }
        BilinearForm::new(g).unwrap()
    }

    proptest! {
        #[test]
        fn radical_iff_degenerate(v in small_matrix(3)) {
            let b = to_form(q(), 3, &v);
            prop_assert_eq!(b.radical().dim() == 0, b.is_nondegenerate());
        }

        #[test]
        fn complement_dimension(v in small_matrix(3), w in prop::collection::vec(-3i64..=3, 3)) {
            let b = to_form(q(), 3, &v);
            prop_assume!(b.is_nondegenerate());
            let ws = Subspace::span(q(), 3, &[w.iter().map(|&x| q().from_i64(x)).collect()]).unwrap();
            prop_assert_eq!(ws.dim() + b.orth_complement(&ws).unwrap().dim(), 3);
        }

        #[test]
        fn signature_additive(v in small_matrix(3), u in small_matrix(2)) {
            let a = to_form(q(), 3, &v);
            let b = to_form(q(), 2, &u);
            prop_assume!(a.is_nondegenerate() && b.is_nondegenerate());
            let sa = signature(&a).unwrap();
            let sb = signature(&b).unwrap();
            prop_assert_eq!(signature(&a.direct_sum(&b)).unwrap(), sa + sb);
            prop_assert_eq!(signature(&a.direct_sum(&hyperbolic_form(q(), 2))).unwrap(), sa);
        }

        #[test]
        fn diagonalization_is_congruence(v in small_matrix(4), p in 0usize..2) {
            let f = if p == 0 { q() } else { Field::prime(7).unwrap() };
            let b = to_form(f, 4, &v);
            let (diag, m) = diagonalize(&b).unwrap();
            let g = b.gram().congruent(&m).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let expect = if i == j { diag[i].clone() } else { f.zero() };
                    prop_assert_eq!(g.get(i, j), &expect);
                }
            }
            prop_assert!(!m.det().unwrap().is_zero());
        }

        #[test]
        fn factorization_reproduces(v in small_matrix(3)) {
            let f = q();
            let m = Matrix::from_rows(f, &v.chunks(3).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>()).unwrap();
            let det = m.det().unwrap();
            prop_assume!(!det.is_zero());
            // scale the first row to land in SL_3
            let mut s = m.clone();
            let inv = det.inv().unwrap();
            for j in 0..3 {
                s.set(0, j, s.get(0, j) * &inv);
            }
            let fs = elementary_factorization(&s).unwrap();
            prop_assert_eq!(product_of(f, 3, &fs), s);
            for e in &fs {
                prop_assert!(e.row != e.col && !e.c.is_zero());
            }
        }
    }
}
