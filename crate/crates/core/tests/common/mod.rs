//! Seeded corpus of isotropically augmented oriented algebras shared by the
//! integration tests.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use gorlab::algebra::{direct_product, truncated_polynomial, FiniteAlgebra};
use gorlab::forms::BilinearForm;
use gorlab::frobenius::{
    augmentation_check, b_phi, connected_sum, form_to_algebra, gorenstein_test, isotropy_check, unitalize,
    AugmentedAlgebra, GorensteinVerdict, NonUnitalOriented, OrientedAlgebra,
};
use gorlab::linalg::{unit_vector, Matrix, Vector};
use gorlab::poly::{Monomial, MultiPoly, Quotient};
use gorlab::scalar::{Field, Scalar};
use gorlab::tensors::a_q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BOUND: i64 = 9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f7() -> Field {
    Field::prime(7).unwrap()
}

pub fn random_vector(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..n).map(|_| field.random(rng, BOUND)).collect()
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data: Vec<Vector> = (0..rows).map(|_| random_vector(field, cols, rng)).collect();
    Matrix::from_rows_with_cols(field, &data, cols).unwrap()
}

pub fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_symmetric(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let s = field.random(rng, BOUND);
            m.set(i, j, s.clone());
            m.set(j, i, s);
        }
    }
    m
}

pub fn random_nondegenerate_form(field: Field, n: usize, rng: &mut ChaCha8Rng) -> BilinearForm {
    loop {
        let b = BilinearForm::new(random_symmetric(field, n, rng)).unwrap();
        if b.is_nondegenerate() {
            return b;
        }
    }
}

/// A random orientation, falling back to the decision procedure.
pub fn random_orientation(a: &FiniteAlgebra, rng: &mut ChaCha8Rng) -> Vector {
    for _ in 0..200 {
        let phi = random_vector(a.field(), a.dim(), rng);
        if b_phi(a, &phi).unwrap().is_nondegenerate() {
            return phi;
        }
    }
    match gorenstein_test(a, rng.gen(), 64, 8) {
        GorensteinVerdict::Oriented { witness, .. } => witness,
        other => panic!("corpus algebra is not Gorenstein: {other:?}"),
    }
}

/// The same oriented augmented algebra in the basis given by the rows of `p`.
pub fn rebase(t: &AugmentedAlgebra, p: &Matrix) -> AugmentedAlgebra {
    let a = t.algebra().base_change(p, None).unwrap();
    let phi = p.mul_vec(&t.oa.phi).unwrap();
    let e = p.mul_vec(&t.e).unwrap();
    AugmentedAlgebra::new(OrientedAlgebra::new(a, phi).unwrap(), e).unwrap()
}

fn augmented(a: FiniteAlgebra, e: Vector, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let phi = random_orientation(&a, rng);
    AugmentedAlgebra::new(OrientedAlgebra::new(a, phi).unwrap(), e).unwrap()
}

/// `k[x]/(x^a g)` with `g(0) ≠ 0`, augmented at the origin.
pub fn power_times_unit(field: Field, n: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let a = rng.gen_range(2..=n);
    let vars: Arc<[String]> = vec!["x".to_string()].into();
    let mut g = MultiPoly::var(field, vars.clone(), 0).pow((n - a) as u32);
    for k in 0..(n - a) {
        let c = if k == 0 {
            field.random_nonzero(rng, BOUND)
        } else {
            field.random(rng, BOUND)
        };
        g = g.add(&MultiPoly::term(field, vars.clone(), Monomial(vec![k as u32]), c)).unwrap();
    }
    let f = MultiPoly::var(field, vars.clone(), 0).pow(a as u32).mul(&g).unwrap();
    let q = Quotient::new(field, vars, &[f]).unwrap();
    let origin = q.index_of(&Monomial::one(1)).unwrap();
    let e = unit_vector(field, q.basis.len(), origin);
    augmented(q.algebra, e, rng)
}

pub fn truncated(field: Field, n: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    augmented(truncated_polynomial(field, n), unit_vector(field, n, 0), rng)
}

pub fn fat_point(field: Field, q: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let a = a_q(field, q).unwrap().algebra;
    let d = a.dim();
    augmented(a, unit_vector(field, d, 0), rng)
}

pub fn square_zero_pair(field: Field, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let vars: Arc<[String]> = vec!["x".to_string(), "y".to_string()].into();
    let x = MultiPoly::var(field, vars.clone(), 0);
    let y = MultiPoly::var(field, vars.clone(), 1);
    let q = Quotient::new(field, vars, &[x.pow(2), y.pow(2)]).unwrap();
    augmented(q.algebra, unit_vector(field, 4, 0), rng)
}

/// Product `L × B` augmented on the local factor `L`.
pub fn product(field: Field, d: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let dl = rng.gen_range(2..d);
    let local = truncated_polynomial(field, dl);
    let other = truncated_polynomial(field, d - dl);
    let a = direct_product(&local, &other).unwrap();
    augmented(a, unit_vector(field, d, 0), rng)
}

pub fn from_form(field: Field, d: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    form_to_algebra(&random_nondegenerate_form(field, d - 2, rng)).unwrap()
}

pub fn unitalized_trivial(field: Field, d: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let nu = NonUnitalOriented::trivial(random_nondegenerate_form(field, d - 2, rng)).unwrap();
    unitalize(&field.random(rng, BOUND), &nu).unwrap()
}

/// One corpus member of dimension in `2..=8`; the kind cycles with `k`.
pub fn corpus_member(field: Field, k: usize, rng: &mut ChaCha8Rng) -> AugmentedAlgebra {
    let t = match k % 8 {
        0 => truncated(field, rng.gen_range(2..=8), rng),
        1 => power_times_unit(field, rng.gen_range(2..=8), rng),
        2 => fat_point(field, rng.gen_range(1..=6), rng),
        3 => square_zero_pair(field, rng),
        4 => from_form(field, rng.gen_range(2..=8), rng),
        5 => unitalized_trivial(field, rng.gen_range(2..=8), rng),
        6 => product(field, rng.gen_range(3..=8), rng),
        _ => {
            let d1 = rng.gen_range(2..=5);
            let d2 = rng.gen_range(2..=(10 - d1).min(5));
            let t1 = truncated(field, d1, rng);
            let t2 = power_times_unit(field, d2, rng);
            connected_sum(&t1, &t2).unwrap().result
        }
    };
    if rng.gen_bool(0.5) {
        let p = random_invertible(field, t.dim(), rng);
        rebase(&t, &p)
    } else {
        t
    }
}

/// `n` members over `field`.
pub fn corpus(field: Field, n: usize, seed: u64) -> Vec<AugmentedAlgebra> {
    let mut r = rng(seed);
    (0..n).map(|k| corpus_member(field, k, &mut r)).collect()
}

/// 50 members over ℚ followed by 50 over 𝔽₇, built once.
pub fn standard_corpus() -> &'static [AugmentedAlgebra] {
    static CORPUS: OnceLock<Vec<AugmentedAlgebra>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = corpus(Field::Rationals, 50, 4);
        out.extend(corpus(f7(), 50, 7));
        out
    })
}

/// Independent re-validation of every axiom an augmented oriented algebra
/// must satisfy.
pub fn validate(t: &AugmentedAlgebra) -> bool {
    let a = t.algebra();
    let rebuilt = FiniteAlgebra::from_constants(a.field(), a.labels().to_vec(), a.constants().to_vec(), Some(a.unit().clone()));
    rebuilt.is_ok()
        && b_phi(a, &t.oa.phi).unwrap().is_nondegenerate()
        && augmentation_check(a, &t.e)
        && isotropy_check(&t.oa, &t.e).unwrap()
}

pub fn q(n: i64) -> Scalar {
    Field::Rationals.from_i64(n)
}
