//! Homogeneous α^k-derivations, inner derivations and the quotient `out`.
//!
//! Matrices act on column vectors over the algebra basis; unknown matrices
//! are vectorized row-major, which fixes the lexicographic pivot order used
//! for every reduced basis below.

use num_traits::Zero;

use crate::algebra::{ColorHomLieAlgebra, GradedVector};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::{coordinates, extend_basis, span_basis, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{one, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedDerivation {
    pub k: i64,
    pub degree: Degree,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub k: i64,
    pub degree: Degree,
    pub basis: Vec<TwistedDerivation>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<Vec<Q>> {
        self.basis.iter().map(|d| d.matrix.entries().to_vec()).collect()
    }

    /// Coordinates of `m` in this basis, or `None` when `m` lies outside.
    pub fn coordinates_of(&self, m: &Matrix) -> Option<Vec<Q>> {
        coordinates(&self.vectors(), m.entries())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates_of(m).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub total: DerivationSpace,
    pub inner: Vec<Matrix>,
    pub complement: Vec<Matrix>,
}

impl QuotientSpace {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Class of `m` in complement coordinates; `None` if `m` is not in `total`.
    pub fn project(&self, m: &Matrix) -> Option<Vec<Q>> {
        let mut basis: Vec<Vec<Q>> = self.inner.iter().map(|b| b.entries().to_vec()).collect();
        basis.extend(self.complement.iter().map(|b| b.entries().to_vec()));
        let c = coordinates(&basis, m.entries())?;
        Some(c[self.inner.len()..].to_vec())
    }
}

/// `α^e` for a possibly negative exponent; negative powers need an invertible α.
pub fn alpha_power(a: &ColorHomLieAlgebra, e: i64) -> Result<Matrix> {
    if e >= 0 {
        return Ok(a.alpha_pow(e as usize));
    }
    let inv = a.alpha().inverse().ok_or_else(|| {
        Error::Unsupported("negative power of alpha requested on a non-regular algebra".into())
    })?;
    Ok(inv.pow((-e) as usize))
}

/// Degrees `deg e_r - deg e_c` that a nonzero homogeneous map can have.
pub fn candidate_degrees(a: &ColorHomLieAlgebra) -> Vec<Degree> {
    let mut out: Vec<Degree> = Vec::new();
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            let d = a.group().sub(a.degree(r), a.degree(c)).expect("same group");
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

fn column(m: &Matrix, c: usize) -> GradedVector {
    GradedVector::from_dense(&m.column(c))
}

fn stack(vectors: &[GradedVector], dim: usize) -> Vec<Q> {
    vectors.iter().flat_map(|v| v.to_dense(dim)).collect()
}

/// Residuals of the commutation and Leibniz conditions for `d`, flattened.
/// Linear in `d`; `derivation_space` solves on these.
fn residual(a: &ColorHomLieAlgebra, ak: &Matrix, k_deg: &Degree, d: &Matrix) -> Vec<Q> {
    let n = a.dim();
    let comm = d.mul(a.alpha()).sub(&a.alpha().mul(d));
    let mut out = comm.entries().to_vec();
    let images: Vec<GradedVector> = (0..n).map(|c| column(d, c)).collect();
    let twisted: Vec<GradedVector> = (0..n).map(|c| column(ak, c)).collect();
    let mut leib = Vec::with_capacity(n * n);
    for i in 0..n {
        let e = a.eps().eval(k_deg, a.degree(i));
        for j in 0..n {
            let lhs = GradedVector::apply(d, a.bracket_basis(i, j));
            let mut r = lhs.sub(&a.bracket(&images[i], &twisted[j]));
            r.add_scaled(&a.bracket(&twisted[i], &images[j]), &-e.clone());
            leib.push(r);
        }
    }
    out.extend(stack(&leib, n));
    out
}

/// The three defining conditions checked on `m`, with per-pair locations.
pub fn check_derivation(a: &ColorHomLieAlgebra, k: i64, degree: &Degree, m: &Matrix) -> Result<Report> {
    let n = a.dim();
    let ak = alpha_power(a, k)?;
    let mut grading = Check::new("derivation.degree");
    for r in 0..n {
        for c in 0..n {
            if !m[(r, c)].is_zero() {
                let want = a.group().add(a.degree(c), degree)?;
                if *a.degree(r) != want {
                    grading.fail(vec![r, c], format!("entry ({r},{c}) maps degree {} to {}", a.degree(c), a.degree(r)));
                }
            }
        }
    }
    let mut comm = Check::new("derivation.commutes_with_alpha");
    let c = m.mul(a.alpha()).sub(&a.alpha().mul(m));
    for r in 0..n {
        for col in 0..n {
            if !c[(r, col)].is_zero() {
                comm.fail(vec![r, col], format!("(D alpha - alpha D)[{r},{col}] = {}", c[(r, col)]));
            }
        }
    }
    let mut leibniz = Check::new("derivation.leibniz");
    let images: Vec<GradedVector> = (0..n).map(|c| column(m, c)).collect();
    let twisted: Vec<GradedVector> = (0..n).map(|c| column(&ak, c)).collect();
    for i in 0..n {
        let e = a.eps().eval(degree, a.degree(i));
        for j in 0..n {
            let mut r = GradedVector::apply(m, a.bracket_basis(i, j));
            r = r.sub(&a.bracket(&images[i], &twisted[j]));
            r.add_scaled(&a.bracket(&twisted[i], &images[j]), &-e.clone());
            if !r.is_zero() {
                leibniz.fail(vec![i, j], format!("Leibniz residual on (e{i},e{j}) = {r}"));
            }
        }
    }
    let mut report = Report::default();
    report.push(grading);
    report.push(comm);
    report.push(leibniz);
    Ok(report)
}

/// `Der^d_{α^k}(A)` as an exact kernel, RREF-reduced.
pub fn derivation_space(a: &ColorHomLieAlgebra, k: i64, d: &Degree) -> Result<DerivationSpace> {
    let n = a.dim();
    let ak = alpha_power(a, k)?;
    let mut unknowns = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if *a.degree(r) == a.group().add(a.degree(c), d)? {
                unknowns.push((r, c));
            }
        }
    }
    let basis = if unknowns.is_empty() {
        Vec::new()
    } else {
        let cols: Vec<Vec<Q>> = unknowns
            .iter()
            .map(|&(r, c)| {
                let mut e = Matrix::zeros(n, n);
                e[(r, c)] = one();
                residual(a, &ak, d, &e)
            })
            .collect();
        let system = Matrix::from_columns(cols[0].len(), &cols);
        let kernel = system.kernel();
        let full: Vec<Vec<Q>> = kernel
            .iter()
            .map(|v| {
                let mut m = vec![Q::zero(); n * n];
                for (t, &(r, c)) in unknowns.iter().enumerate() {
                    m[r * n + c] = v[t].clone();
                }
                m
            })
            .collect();
        span_basis(n * n, &full)
    };
    let basis = basis
        .into_iter()
        .map(|v| TwistedDerivation {
            k,
            degree: d.clone(),
            matrix: Matrix::from_entries(n, n, v),
        })
        .collect();
    let space = DerivationSpace {
        k,
        degree: d.clone(),
        basis,
    };
    for b in &space.basis {
        let rep = check_derivation(a, k, d, &b.matrix)?;
        if !rep.passed() {
            return Err(Error::InternalConsistency(format!("solved derivation fails its conditions: {rep}")));
        }
    }
    Ok(space)
}

/// Inner derivation data together with the diagnostics of its own check.
#[derive(Clone, Debug)]
pub struct AdResult {
    pub derivation: TwistedDerivation,
    pub diagnostics: Report,
}

/// `ad_k(x)(y) = ε(x̄,ȳ)[α^k(y), x] = -[x, α^k(y)]`.
///
/// With trivial grading this is `[α^k(y), x]`. The ε factor makes it a left
/// derivation for odd and colored `x` as well. `x` must be homogeneous and,
/// unless `allow_unfixed`, satisfy `α(x) = x`. The result is checked as an
/// `α^{k+1}`-derivation and the outcome returned as diagnostics.
pub fn ad_k(a: &ColorHomLieAlgebra, k: i64, x: &GradedVector, allow_unfixed: bool) -> Result<AdResult> {
    let n = a.dim();
    let degree = match a.homogeneous_degree(x) {
        Some(d) => d,
        None if x.is_zero() => a.group().zero(),
        None => return Err(Error::Precondition(format!("ad_k argument {x} is not homogeneous"))),
    };
    let moved = a.apply_alpha(x).sub(x);
    if !moved.is_zero() && !allow_unfixed {
        return Err(Error::Precondition(format!("alpha(x) != x; residual alpha(x) - x = {moved}")));
    }
    let ak = alpha_power(a, k)?;
    let cols: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let e = a.eps().eval(&degree, a.degree(j));
            a.bracket(&column(&ak, j), x).scale(&e).to_dense(n)
        })
        .collect();
    let matrix = Matrix::from_columns(n, &cols);
    let mut diagnostics = check_derivation(a, k + 1, &degree, &matrix)?;
    if !moved.is_zero() {
        let mut c = Check::new("ad.alpha_fixed");
        c.fail(Vec::new(), format!("override used: alpha(x) - x = {moved}"));
        diagnostics.push(c);
    }
    Ok(AdResult {
        derivation: TwistedDerivation {
            k: k + 1,
            degree,
            matrix,
        },
        diagnostics,
    })
}

/// Basis of `ker(α - id)` restricted to degree `d`.
pub fn fixed_vectors(a: &ColorHomLieAlgebra, d: &Degree) -> Vec<GradedVector> {
    let block = a.indices_of_degree(d);
    if block.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Q>> = (0..a.dim())
        .map(|r| {
            block
                .iter()
                .map(|&c| {
                    let mut v = a.alpha()[(r, c)].clone();
                    if r == c {
                        v -= one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|k| GradedVector::from_terms(block.iter().copied().zip(k)))
        .collect()
}

/// `Inn_{α^k}` in degree `d`: span of `ad_{k-1}(x)` over α-fixed `x` of degree `d`.
pub fn inner_space(a: &ColorHomLieAlgebra, k: i64, d: &Degree) -> Result<DerivationSpace> {
    let n = a.dim();
    if k == 0 && a.alpha().inverse().is_none() {
        return Err(Error::Unsupported("inner derivations at k = 0 need an invertible alpha".into()));
    }
    let mut vectors = Vec::new();
    for x in fixed_vectors(a, d) {
        vectors.push(ad_k(a, k - 1, &x, false)?.derivation.matrix.entries().to_vec());
    }
    let basis = span_basis(n * n, &vectors)
        .into_iter()
        .map(|v| TwistedDerivation {
            k,
            degree: d.clone(),
            matrix: Matrix::from_entries(n, n, v),
        })
        .collect();
    Ok(DerivationSpace {
        k,
        degree: d.clone(),
        basis,
    })
}

/// Inner derivations across every degree a map on `A` can carry.
pub fn inner_spaces(a: &ColorHomLieAlgebra, k: i64) -> Result<Vec<DerivationSpace>> {
    candidate_degrees(a).iter().map(|d| inner_space(a, k, d)).collect()
}

/// `Der^d_{α^k} / Inn^d_{α^k}` with complement chosen by extending the RREF
/// inner basis with the RREF derivation basis in order.
pub fn outer_quotient(a: &ColorHomLieAlgebra, k: i64, d: &Degree) -> Result<QuotientSpace> {
    let n = a.dim();
    let total = derivation_space(a, k, d)?;
    let inner = inner_space(a, k, d)?;
    for m in &inner.basis {
        if !total.contains(&m.matrix) {
            return Err(Error::InternalConsistency(format!(
                "inner derivation outside Der in degree {d}: {:?}",
                m.matrix
            )));
        }
    }
    let inner_vecs = inner.vectors();
    let complement = extend_basis(&inner_vecs, &total.vectors())
        .into_iter()
        .map(|v| Matrix::from_entries(n, n, v))
        .collect();
    Ok(QuotientSpace {
        total,
        inner: inner.basis.into_iter().map(|b| b.matrix).collect(),
        complement,
    })
}

pub fn outer_quotients(a: &ColorHomLieAlgebra, k: i64) -> Result<Vec<QuotientSpace>> {
    candidate_degrees(a).iter().map(|d| outer_quotient(a, k, d)).collect()
}

/// `D₁∘D₂ - ε(d₁,d₂) D₂∘D₁`, of degree `d₁ + d₂` and level `k₁ + k₂`.
pub fn der_bracket(a: &ColorHomLieAlgebra, d1: &TwistedDerivation, d2: &TwistedDerivation) -> TwistedDerivation {
    let e = a.eps().eval(&d1.degree, &d2.degree);
    let matrix = d1.matrix.mul(&d2.matrix).sub(&d2.matrix.mul(&d1.matrix).scale(&e));
    TwistedDerivation {
        k: d1.k + d2.k,
        degree: a.group().add(&d1.degree, &d2.degree).expect("same group"),
        matrix,
    }
}

/// `α̃(D) = D∘α`.
pub fn tilde_alpha(a: &ColorHomLieAlgebra, d: &TwistedDerivation) -> TwistedDerivation {
    TwistedDerivation {
        k: d.k,
        degree: d.degree.clone(),
        matrix: d.matrix.mul(a.alpha()),
    }
}

/// Left multiplication `y ↦ [α^j(z), y]`.
pub fn left_mult(a: &ColorHomLieAlgebra, z: &GradedVector, j: i64) -> Result<Matrix> {
    let n = a.dim();
    let az = GradedVector::apply(&alpha_power(a, j)?, z);
    let cols: Vec<Vec<Q>> = (0..n)
        .map(|c| a.bracket(&az, &GradedVector::basis(c)).to_dense(n))
        .collect();
    Ok(Matrix::from_columns(n, &cols))
}

/// Color commutator of two operators of the given degrees.
pub fn color_commutator(a: &ColorHomLieAlgebra, m1: &Matrix, d1: &Degree, m2: &Matrix, d2: &Degree) -> Matrix {
    let e = a.eps().eval(d1, d2);
    m1.mul(m2).sub(&m2.mul(m1).scale(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures;

    #[test]
    fn abelian_derivations_are_all_degree_preserving_maps() {
        let a = fixtures::abelian(3);
        let d = derivation_space(&a, 2, &a.group().zero()).unwrap();
        assert_eq!(d.dim(), 9);
        let s = fixtures::super_abelian(2, 1);
        assert_eq!(derivation_space(&s, 1, &s.group().zero()).unwrap().dim(), 5);
    }

    #[test]
    fn sl2_and_heisenberg_dimensions() {
        let sl2 = fixtures::sl2();
        let z = sl2.group().zero();
        assert_eq!(derivation_space(&sl2, 0, &z).unwrap().dim(), 3);
        assert_eq!(inner_space(&sl2, 1, &z).unwrap().dim(), 3);
        assert_eq!(outer_quotient(&sl2, 1, &z).unwrap().dim(), 0);
        let h = fixtures::heisenberg();
        assert_eq!(derivation_space(&h, 0, &z).unwrap().dim(), 6);
        assert_eq!(inner_space(&h, 1, &z).unwrap().dim(), 2);
        assert_eq!(outer_quotient(&h, 1, &z).unwrap().dim(), 4);
        let ab = fixtures::abelian(2);
        assert_eq!(outer_quotient(&ab, 1, &z).unwrap().dim(), 4);
    }

    #[test]
    fn ad_of_h_in_sl2() {
        let sl2 = fixtures::sl2();
        let ad = ad_k(&sl2, 0, &GradedVector::basis(0), false).unwrap();
        assert_eq!(ad.derivation.matrix, Matrix::diagonal(&[q(0), q(-2), q(2)]));
        assert!(ad.diagnostics.passed());
        let heis = fixtures::heisenberg();
        assert!(ad_k(&heis, 0, &GradedVector::basis(2), false).unwrap().derivation.matrix.is_zero());
    }

    #[test]
    fn ad_rejects_unfixed_argument_unless_overridden() {
        let t = fixtures::sl2_scaled_twist();
        let e = GradedVector::basis(1);
        assert!(matches!(ad_k(&t, 0, &e, false), Err(Error::Precondition(_))));
        let r = ad_k(&t, 0, &e, true).unwrap();
        assert!(r.diagnostics.get("ad.alpha_fixed").is_some());
    }

    #[test]
    fn ad_is_a_shifted_derivation_in_color_cases() {
        for a in [fixtures::super_2_1(), fixtures::klein_color_algebra(), fixtures::sl2_scaled_twist()] {
            for x in 0..a.dim() {
                let x = GradedVector::basis(x);
                if !a.is_alpha_fixed(&x) {
                    continue;
                }
                for k in 0..3 {
                    let r = ad_k(&a, k, &x, false).unwrap();
                    assert!(r.diagnostics.passed(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn bracket_of_ads_in_sl2() {
        let sl2 = fixtures::sl2();
        let adh = ad_k(&sl2, 0, &GradedVector::basis(0), false).unwrap().derivation;
        let ade = ad_k(&sl2, 0, &GradedVector::basis(1), false).unwrap().derivation;
        let br = der_bracket(&sl2, &adh, &ade);
        assert_eq!(br.matrix, ade.matrix.scale(&q(-2)));
        assert!(der_bracket(&sl2, &adh, &adh).matrix.is_zero());
        assert_eq!(tilde_alpha(&sl2, &adh), adh);
    }

    #[test]
    fn projection_kills_inner() {
        let h = fixtures::heisenberg();
        let quot = outer_quotient(&h, 1, &h.group().zero()).unwrap();
        for m in &quot.inner {
            assert!(quot.project(m).unwrap().iter().all(Zero::is_zero));
        }
        assert!(quot.project(&Matrix::identity(3).scale(&q(5))).is_none());
    }

    use crate::scalar::q;
}
