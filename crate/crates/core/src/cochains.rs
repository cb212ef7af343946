//! Graded skew cochains `A^{p,w}_gskew(g, V)`, the covariant differential,
//! the two wedge products and cohomology spaces.
//!
//! Permutations act on argument lists by `σ(a)_m = a_{σ(m)}` (0-based), and
//! `ε_k(σ, a)` is the product of `ε(a_i, a_j)` over the pairs `i < j` whose
//! order `σ` reverses. A cochain is stored on weakly increasing index tuples;
//! a repeated index is only stored for odd basis elements, for which
//! `ε(x, x) = -1` leaves `ψ(…, x, x, …)` unconstrained.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{ColorHomLieAlgebra, GradedVector};
use crate::derivations::check_derivation;
use crate::error::{Error, Result};
use crate::grading::{CommutationFactor, Degree};
use crate::linalg::{extend_basis, span_basis, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{factorial, one, sign_power, Q};

/// `ε_k(σ, a)` by scanning the pairs `σ` puts out of order.
pub fn eps_perm(eps: &CommutationFactor, sigma: &[usize], degrees: &[Degree]) -> Q {
    let k = sigma.len();
    let mut pos = vec![0; k];
    for (m, &s) in sigma.iter().enumerate() {
        pos[s] = m;
    }
    let mut acc = one();
    for i in 0..k {
        for j in i + 1..k {
            if pos[i] > pos[j] {
                acc *= eps.eval(&degrees[i], &degrees[j]);
            }
        }
    }
    acc
}

/// `+1` or `-1` by inversion parity.
pub fn perm_sign(sigma: &[usize]) -> Q {
    let mut inv = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inv += 1;
            }
        }
    }
    sign_power(inv)
}

/// Stable argsort: `sorted[m] = tuple[σ[m]]`.
pub fn sorting_permutation(tuple: &[usize]) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..tuple.len()).collect();
    sigma.sort_by_key(|&m| tuple[m]);
    sigma
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// `φ_x` is an α^k-derivation of a target algebra.
    Derivation,
    /// `φ` is a plain linear action on a graded vector space.
    Module,
}

/// A map `x ↦ φ_x` from the basis of `source` to operators on a graded target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub source: ColorHomLieAlgebra,
    pub target_degrees: Vec<Degree>,
    pub target: Option<ColorHomLieAlgebra>,
    pub k: i64,
    pub action: Vec<Matrix>,
    pub kind: ActionKind,
}

impl Connection {
    /// Scalars `ℚ` in degree zero with the zero action.
    pub fn trivial(g: &ColorHomLieAlgebra) -> Self {
        Connection {
            source: g.clone(),
            target_degrees: vec![g.group().zero()],
            target: None,
            k: 1,
            action: vec![Matrix::zeros(1, 1); g.dim()],
            kind: ActionKind::Module,
        }
    }

    /// `φ = 0` into the algebra `h`.
    pub fn zero(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64) -> Self {
        Self::derivation(g, h, k, vec![Matrix::zeros(h.dim(), h.dim()); g.dim()])
    }

    pub fn derivation(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64, action: Vec<Matrix>) -> Self {
        Connection {
            source: g.clone(),
            target_degrees: h.degrees(),
            target: Some(h.clone()),
            k,
            action,
            kind: ActionKind::Derivation,
        }
    }

    pub fn module(g: &ColorHomLieAlgebra, target_degrees: Vec<Degree>, k: i64, action: Vec<Matrix>) -> Self {
        Connection {
            source: g.clone(),
            target_degrees,
            target: None,
            k,
            action,
            kind: ActionKind::Module,
        }
    }

    /// `g` acting on itself by `x ↦ [α^{k-1}(x), ·]`.
    pub fn adjoint(g: &ColorHomLieAlgebra, k: i64) -> Result<Self> {
        let action = (0..g.dim())
            .map(|i| crate::derivations::left_mult(g, &GradedVector::basis(i), k - 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Connection {
            source: g.clone(),
            target_degrees: g.degrees(),
            target: Some(g.clone()),
            k,
            action,
            kind: ActionKind::Module,
        })
    }

    pub fn target_dim(&self) -> usize {
        self.target_degrees.len()
    }

    /// φ applied to a general element of the source.
    pub fn action_of(&self, x: &GradedVector) -> Matrix {
        let n = self.target_dim();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in x.iter() {
            m = m.add(&self.action[i].scale(c));
        }
        m
    }

    /// Shapes, the degree of each `φ_x`, and derivation membership when relevant.
    pub fn validate(&self) -> Result<Report> {
        let n = self.target_dim();
        if self.action.len() != self.source.dim() {
            return Err(Error::structural(format!(
                "connection has {} matrices for a source of dimension {}",
                self.action.len(),
                self.source.dim()
            )));
        }
        if self.action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::structural(format!("connection matrices must be {n}x{n}")));
        }
        let group = self.source.group();
        let mut degree = Check::new("connection.degree");
        for (x, m) in self.action.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    if !m[(r, c)].is_zero()
                        && self.target_degrees[r] != group.add(&self.target_degrees[c], self.source.degree(x))?
                    {
                        degree.fail(vec![x, r, c], format!("phi_{x} entry ({r},{c}) has the wrong degree"));
                    }
                }
            }
        }
        let mut report = Report::default();
        report.push(degree);
        if self.kind == ActionKind::Derivation {
            let h = self
                .target
                .as_ref()
                .ok_or_else(|| Error::structural("derivation-valued connection needs a target algebra"))?;
            let mut member = Check::new("connection.derivation");
            for (x, m) in self.action.iter().enumerate() {
                let rep = check_derivation(h, self.k, self.source.degree(x), m)?;
                for c in rep.checks {
                    for v in c.violations {
                        let mut loc = vec![x];
                        loc.extend(v.location);
                        member.fail(loc, format!("phi_{x}: {}: {}", c.name, v.message));
                    }
                }
            }
            report.push(member);
        }
        Ok(report)
    }
}

/// Element of `A^{p,w}_gskew(g, V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedCochain {
    pub p: usize,
    pub weight: Degree,
    pub target_dim: usize,
    values: BTreeMap<Vec<usize>, GradedVector>,
}

impl GradedCochain {
    pub fn zero(p: usize, weight: Degree, target_dim: usize) -> Self {
        GradedCochain {
            p,
            weight,
            target_dim,
            values: BTreeMap::new(),
        }
    }

    /// Sets the value on a stored (weakly increasing) tuple.
    pub fn set(&mut self, tuple: Vec<usize>, value: GradedVector) {
        assert_eq!(tuple.len(), self.p, "arity mismatch");
        assert!(tuple.windows(2).all(|w| w[0] <= w[1]), "tuple {tuple:?} is not sorted");
        if value.is_zero() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, value);
        }
    }

    pub fn stored(&self, tuple: &[usize]) -> GradedVector {
        self.values.get(tuple).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &GradedVector)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &GradedCochain) -> GradedCochain {
        self.add_scaled(other, &one())
    }

    pub fn sub(&self, other: &GradedCochain) -> GradedCochain {
        self.add_scaled(other, &-one())
    }

    pub fn scale(&self, s: &Q) -> GradedCochain {
        GradedCochain::zero(self.p, self.weight.clone(), self.target_dim).add_scaled(self, s)
    }

    pub fn add_scaled(&self, other: &GradedCochain, s: &Q) -> GradedCochain {
        assert_eq!(self.p, other.p, "arity mismatch");
        let mut out = self.clone();
        for (t, v) in &other.values {
            let mut cur = out.stored(t);
            cur.add_scaled(v, s);
            out.set(t.clone(), cur);
        }
        out
    }

    /// Applies a linear map to every value.
    pub fn map_values(&self, m: &Matrix) -> GradedCochain {
        let mut out = GradedCochain::zero(self.p, self.weight.clone(), m.rows());
        for (t, v) in &self.values {
            out.set(t.clone(), GradedVector::apply(m, v));
        }
        out
    }

    /// First stored tuple where the two differ.
    pub fn first_difference(&self, other: &GradedCochain) -> Option<Vec<usize>> {
        self.values
            .keys()
            .chain(other.values.keys())
            .filter(|t| self.stored(t) != other.stored(t))
            .min()
            .cloned()
    }
}

/// Weakly increasing `p`-tuples with repeats only on odd basis elements.
pub fn stored_tuples(g: &ColorHomLieAlgebra, p: usize) -> Vec<Vec<usize>> {
    (0..g.dim())
        .combinations_with_replacement(p)
        .filter(|t| t.windows(2).all(|w| w[0] < w[1] || g.is_odd(w[0])))
        .collect()
}

fn tuple_degree(g: &ColorHomLieAlgebra, w: &Degree, tuple: &[usize]) -> Degree {
    let mut d = w.clone();
    for &i in tuple {
        d = g.group().add(&d, g.degree(i)).expect("same group");
    }
    d
}

/// Value on an arbitrary tuple of basis indices.
pub fn cochain_eval(g: &ColorHomLieAlgebra, psi: &GradedCochain, args: &[usize]) -> GradedVector {
    assert_eq!(args.len(), psi.p, "arity mismatch");
    let sigma = sorting_permutation(args);
    let sorted: Vec<usize> = sigma.iter().map(|&m| args[m]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1] && !g.is_odd(w[0])) {
        return GradedVector::new();
    }
    let stored = psi.stored(&sorted);
    if stored.is_zero() {
        return stored;
    }
    let degrees: Vec<Degree> = args.iter().map(|&i| g.degree(i).clone()).collect();
    stored.scale(&(perm_sign(&sigma) * eps_perm(g.eps(), &sigma, &degrees)))
}

/// Multilinear extension of [`cochain_eval`] to vector arguments.
pub fn eval_vectors(g: &ColorHomLieAlgebra, psi: &GradedCochain, args: &[GradedVector]) -> GradedVector {
    let mut out = GradedVector::new();
    if args.iter().any(GradedVector::is_zero) {
        return out;
    }
    let supports: Vec<Vec<(usize, Q)>> = args.iter().map(|a| a.iter().map(|(i, c)| (i, c.clone())).collect()).collect();
    for combo in supports.iter().map(|s| s.iter()).multi_cartesian_product() {
        let idx: Vec<usize> = combo.iter().map(|(i, _)| *i).collect();
        let coeff = combo.iter().fold(one(), |acc, (_, c)| acc * c);
        out.add_scaled(&cochain_eval(g, psi, &idx), &coeff);
    }
    if psi.p == 0 {
        out = psi.stored(&[]);
    }
    out
}

/// Builds a cochain from a function evaluated on every stored tuple.
pub fn cochain_from_fn(
    g: &ColorHomLieAlgebra,
    p: usize,
    weight: Degree,
    target_dim: usize,
    mut f: impl FnMut(&[usize]) -> GradedVector,
) -> GradedCochain {
    let mut out = GradedCochain::zero(p, weight, target_dim);
    for t in stored_tuples(g, p) {
        let v = f(&t);
        out.set(t, v);
    }
    out
}

/// Stored keys sorted and allowed, values of degree `w + Σ deg x_i`.
pub fn check_cochain(g: &ColorHomLieAlgebra, target_degrees: &[Degree], psi: &GradedCochain) -> Report {
    let mut c = Check::new("cochain.homogeneous");
    let allowed = stored_tuples(g, psi.p);
    for (t, v) in psi.entries() {
        if !allowed.contains(t) {
            c.fail(t.clone(), "tuple is not a stored tuple (unsorted or repeated even index)");
            continue;
        }
        let want = tuple_degree(g, &psi.weight, t);
        for (r, _) in v.iter() {
            if r >= target_degrees.len() || target_degrees[r] != want {
                c.fail(t.clone(), format!("component {r} of the value does not have degree {want}"));
            }
        }
    }
    let mut rep = Report::default();
    rep.push(c);
    rep
}

/// Covariant differential on one tuple of basis indices.
pub fn covariant_delta_at(phi: &Connection, psi: &GradedCochain, x: &[usize]) -> GradedVector {
    let g = &phi.source;
    let group = g.group();
    let p1 = x.len();
    let mut out = GradedVector::new();
    let mut preceding = psi.weight.clone();
    for i in 0..p1 {
        let xi = x[i];
        let mut rest = x.to_vec();
        rest.remove(i);
        let val = cochain_eval(g, psi, &rest);
        if !val.is_zero() {
            let theta = g.eps().eval(&preceding, g.degree(xi));
            out.add_scaled(&GradedVector::apply(&phi.action[xi], &val), &(sign_power(i) * theta));
        }
        preceding = group.add(&preceding, g.degree(xi)).expect("same group");
    }
    let alphas: Vec<GradedVector> = x.iter().map(|&i| g.alpha_basis(i)).collect();
    for i in 0..p1 {
        for j in i + 1..p1 {
            let br = g.bracket_basis(x[i], x[j]);
            if br.is_zero() {
                continue;
            }
            let between = group.sum((i + 1..j).map(|m| g.degree(x[m])));
            let theta = g.eps().eval(&between, g.degree(x[j]));
            let mut args = Vec::with_capacity(p1 - 1);
            for m in 0..p1 {
                if m == i {
                    args.push(br.clone());
                } else if m != j {
                    args.push(alphas[m].clone());
                }
            }
            out.add_scaled(&eval_vectors(g, psi, &args), &(sign_power(j) * theta));
        }
    }
    out
}

/// `δ_φ ψ`, of arity `p + 1` and the same weight.
pub fn covariant_delta(phi: &Connection, psi: &GradedCochain) -> Result<GradedCochain> {
    if psi.target_dim != phi.target_dim() {
        return Err(Error::structural(format!(
            "cochain target has dimension {}, connection target {}",
            psi.target_dim,
            phi.target_dim()
        )));
    }
    let g = &phi.source;
    Ok(cochain_from_fn(g, psi.p + 1, psi.weight.clone(), psi.target_dim, |t| {
        covariant_delta_at(phi, psi, t)
    }))
}

/// Color Chevalley differential on scalar cochains (φ = 0).
pub fn chevalley_delta(g: &ColorHomLieAlgebra, zeta: &GradedCochain) -> Result<GradedCochain> {
    covariant_delta(&Connection::trivial(g), zeta)
}

/// Shuffle sum shared by both wedge products. `first` has arity `a` and is
/// evaluated on the first `a` permuted arguments; `moved_weight` is the
/// weight carried past them.
fn shuffle_sum(
    g: &ColorHomLieAlgebra,
    x: &[usize],
    a: usize,
    b: usize,
    moved_weight: &Degree,
    mut term: impl FnMut(&[usize], &[usize]) -> GradedVector,
) -> GradedVector {
    let degrees: Vec<Degree> = x.iter().map(|&i| g.degree(i).clone()).collect();
    let norm = one() / (factorial(a) * factorial(b));
    let mut out = GradedVector::new();
    for sigma in (0..a + b).permutations(a + b) {
        let args: Vec<usize> = sigma.iter().map(|&m| x[m]).collect();
        let v = term(&args[..a], &args[a..]);
        if v.is_zero() {
            continue;
        }
        let eta = g.group().sum(args[..a].iter().map(|&i| g.degree(i)));
        let coeff = perm_sign(&sigma) * g.eps().eval(moved_weight, &eta) * eps_perm(g.eps(), &sigma, &degrees) * &norm;
        out.add_scaled(&v, &coeff);
    }
    out
}

/// `(ζ∧ψ)` on one tuple, for scalar `ζ ∈ A^{q,z}` and `ψ ∈ A^{p,w}`.
pub fn wedge_scalar_at(g: &ColorHomLieAlgebra, zeta: &GradedCochain, psi: &GradedCochain, x: &[usize]) -> GradedVector {
    shuffle_sum(g, x, zeta.p, psi.p, &psi.weight, |first, second| {
        let s = cochain_eval(g, zeta, first).get(0);
        if s.is_zero() {
            return GradedVector::new();
        }
        cochain_eval(g, psi, second).scale(&s)
    })
}

pub fn wedge_scalar(g: &ColorHomLieAlgebra, zeta: &GradedCochain, psi: &GradedCochain) -> Result<GradedCochain> {
    if zeta.target_dim != 1 {
        return Err(Error::structural("the left factor of a scalar wedge must be scalar valued"));
    }
    let w = g.group().add(&zeta.weight, &psi.weight)?;
    Ok(cochain_from_fn(g, zeta.p + psi.p, w, psi.target_dim, |t| wedge_scalar_at(g, zeta, psi, t)))
}

/// `[ψ,ζ]_∧` on one tuple, both valued in the algebra `h`.
pub fn bracket_wedge_at(
    g: &ColorHomLieAlgebra,
    h: &ColorHomLieAlgebra,
    psi: &GradedCochain,
    zeta: &GradedCochain,
    x: &[usize],
) -> GradedVector {
    shuffle_sum(g, x, psi.p, zeta.p, &zeta.weight, |first, second| {
        let a = cochain_eval(g, psi, first);
        if a.is_zero() {
            return a;
        }
        h.bracket(&a, &cochain_eval(g, zeta, second))
    })
}

pub fn bracket_wedge(
    g: &ColorHomLieAlgebra,
    h: &ColorHomLieAlgebra,
    psi: &GradedCochain,
    zeta: &GradedCochain,
) -> Result<GradedCochain> {
    if psi.target_dim != h.dim() || zeta.target_dim != h.dim() {
        return Err(Error::structural("bracket wedge factors must be valued in h"));
    }
    let w = g.group().add(&psi.weight, &zeta.weight)?;
    Ok(cochain_from_fn(g, psi.p + zeta.p, w, h.dim(), |t| bracket_wedge_at(g, h, psi, zeta, t)))
}

/// `δ_φ δ_φ ψ - [ρ, ψ]_∧`.
pub fn delta_squared_residual(phi: &Connection, rho: &GradedCochain, psi: &GradedCochain) -> Result<GradedCochain> {
    let h = phi
        .target
        .as_ref()
        .ok_or_else(|| Error::structural("the curvature bracket needs a target algebra"))?;
    let dd = covariant_delta(phi, &covariant_delta(phi, psi)?)?;
    Ok(dd.sub(&bracket_wedge(&phi.source, h, rho, psi)?))
}

/// Coordinates of the cochain space: `(tuple, target index)` pairs whose
/// target degree is `w + Σ deg x_i`, tuples lexicographic.
pub fn cochain_basis(g: &ColorHomLieAlgebra, target_degrees: &[Degree], p: usize, w: &Degree) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for t in stored_tuples(g, p) {
        let d = tuple_degree(g, w, &t);
        for (r, td) in target_degrees.iter().enumerate() {
            if *td == d {
                out.push((t.clone(), r));
            }
        }
    }
    out
}

pub fn to_coords(psi: &GradedCochain, basis: &[(Vec<usize>, usize)]) -> Result<Vec<Q>> {
    let mut out = vec![Q::zero(); basis.len()];
    let mut hit = 0usize;
    for (ix, (t, r)) in basis.iter().enumerate() {
        let v = psi.stored(t).get(*r);
        if !v.is_zero() {
            hit += 1;
        }
        out[ix] = v;
    }
    let total: usize = psi.entries().map(|(_, v)| v.iter().count()).sum();
    if hit != total {
        return Err(Error::structural("cochain has components outside the requested cochain space"));
    }
    Ok(out)
}

pub fn from_coords(p: usize, w: &Degree, target_dim: usize, basis: &[(Vec<usize>, usize)], coords: &[Q]) -> GradedCochain {
    let mut out = GradedCochain::zero(p, w.clone(), target_dim);
    for ((t, r), c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let mut v = out.stored(t);
        v.add_term(*r, c);
        out.set(t.clone(), v);
    }
    out
}

/// Matrix of `δ_φ` from weight-`w` `p`-cochains to `(p+1)`-cochains.
pub fn delta_matrix(phi: &Connection, p: usize, w: &Degree) -> Result<Matrix> {
    let g = &phi.source;
    let src = cochain_basis(g, &phi.target_degrees, p, w);
    let dst = cochain_basis(g, &phi.target_degrees, p + 1, w);
    let mut cols = Vec::with_capacity(src.len());
    for (t, r) in &src {
        let mut psi = GradedCochain::zero(p, w.clone(), phi.target_dim());
        psi.set(t.clone(), GradedVector::basis(*r));
        cols.push(to_coords(&covariant_delta(phi, &psi)?, &dst)?);
    }
    Ok(if cols.is_empty() {
        Matrix::zeros(dst.len(), 0)
    } else {
        Matrix::from_columns(dst.len(), &cols)
    })
}

/// A basis cochain `ψ` of arity `p - 1` with `δδψ ≠ 0`, if any.
pub fn flatness_witness(phi: &Connection, p: usize, w: &Degree) -> Result<Option<GradedCochain>> {
    if p == 0 {
        return Ok(None);
    }
    let d_in = delta_matrix(phi, p - 1, w)?;
    let d_out = delta_matrix(phi, p, w)?;
    let dd = d_out.mul(&d_in);
    let src = cochain_basis(&phi.source, &phi.target_degrees, p - 1, w);
    for c in 0..dd.cols() {
        if (0..dd.rows()).any(|r| !dd[(r, c)].is_zero()) {
            let mut unit = vec![Q::zero(); src.len()];
            unit[c] = one();
            return Ok(Some(from_coords(p - 1, w, phi.target_dim(), &src, &unit)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySpace {
    pub p: usize,
    pub weight: Degree,
    pub basis: Vec<(Vec<usize>, usize)>,
    pub cocycles: Vec<Vec<Q>>,
    pub coboundaries: Vec<Vec<Q>>,
    pub representatives: Vec<Vec<Q>>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative_cochains(&self, target_dim: usize) -> Vec<GradedCochain> {
        self.representatives
            .iter()
            .map(|c| from_coords(self.p, &self.weight, target_dim, &self.basis, c))
            .collect()
    }
}

/// `H^p` of weight `w`. Rejects actions with `δ∘δ ≠ 0` on the relevant
/// degrees, naming a witness.
pub fn cohomology_space(phi: &Connection, p: usize, w: &Degree) -> Result<CohomologySpace> {
    if let Some(wit) = flatness_witness(phi, p, w)? {
        return Err(Error::Precondition(format!(
            "delta o delta != 0; witness cochain {:?}",
            wit.entries().collect::<Vec<_>>()
        )));
    }
    let basis = cochain_basis(&phi.source, &phi.target_degrees, p, w);
    let d_out = delta_matrix(phi, p, w)?;
    let cocycles = if basis.is_empty() {
        Vec::new()
    } else if d_out.rows() == 0 {
        (0..basis.len()).map(|i| crate::linalg::unit(basis.len(), i)).collect()
    } else {
        span_basis(basis.len(), &d_out.kernel())
    };
    let coboundaries = if p == 0 {
        Vec::new()
    } else {
        let d_in = delta_matrix(phi, p - 1, w)?;
        span_basis(basis.len(), &d_in.transpose().to_rows())
    };
    let representatives = extend_basis(&coboundaries, &cocycles);
    Ok(CohomologySpace {
        p,
        weight: w.clone(),
        basis,
        cocycles,
        coboundaries,
        representatives,
    })
}

/// Solves `δ_φ ν = target` over weight-`w` cochains of arity `target.p - 1`.
pub fn solve_coboundary(phi: &Connection, target: &GradedCochain) -> Result<Option<GradedCochain>> {
    if target.p == 0 {
        return Ok(if target.is_zero() {
            Some(GradedCochain::zero(0, target.weight.clone(), target.target_dim))
        } else {
            None
        });
    }
    let p = target.p - 1;
    let w = &target.weight;
    let src = cochain_basis(&phi.source, &phi.target_degrees, p, w);
    let dst = cochain_basis(&phi.source, &phi.target_degrees, p + 1, w);
    let rhs = to_coords(target, &dst)?;
    let m = delta_matrix(phi, p, w)?;
    if src.is_empty() {
        return Ok(rhs.iter().all(Zero::is_zero).then(|| GradedCochain::zero(p, w.clone(), target.target_dim)));
    }
    Ok(m.solve(&rhs).map(|x| from_coords(p, w, target.target_dim, &src, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::testkit::gen::{self, interesting_weights, random_cochain};
    use crate::testkit::{fixtures, oracle};

    fn color_lie_corpus() -> Vec<(String, ColorHomLieAlgebra)> {
        fixtures::corpus().into_iter().filter(|(_, a)| a.alpha_is_identity()).collect()
    }

    #[test]
    fn eps_perm_examples() {
        let eps = CommutationFactor::super_sign();
        let g = eps.group().clone();
        let d = |v: i64| g.degree(&[v]).unwrap();
        assert_eq!(eps_perm(&eps, &[0, 1], &[d(1), d(1)]), one());
        assert_eq!(eps_perm(&eps, &[1, 0], &[d(1), d(1)]), -one());
        let degs = [d(1), d(1), d(0)];
        for sigma in (0..3).permutations(3) {
            assert_eq!(eps_perm(&eps, &sigma, &degs), oracle::oracle_inversions(&eps, &sigma, &degs));
        }
    }

    #[test]
    fn eps_perm_composition_law() {
        let eps = CommutationFactor::klein_color();
        let g = eps.group().clone();
        let pool: Vec<Degree> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|c| g.degree(c).unwrap()).collect();
        for k in 1..=4 {
            let a: Vec<Degree> = (0..k).map(|i| pool[(i * 3 + 1) % 4].clone()).collect();
            for s in (0..k).permutations(k) {
                let sa: Vec<Degree> = s.iter().map(|&m| a[m].clone()).collect();
                for t in (0..k).permutations(k) {
                    let st: Vec<usize> = t.iter().map(|&m| s[m]).collect();
                    assert_eq!(eps_perm(&eps, &st, &a), eps_perm(&eps, &s, &a) * eps_perm(&eps, &t, &sa));
                }
            }
        }
    }

    #[test]
    fn eval_single_swap_and_even_repeat() {
        let g = fixtures::z2_scaled_heisenberg();
        let mut psi = GradedCochain::zero(2, g.group().zero(), 3);
        psi.set(vec![0, 1], GradedVector::basis(2));
        let e21 = g.eps_basis(1, 0);
        assert_eq!(cochain_eval(&g, &psi, &[1, 0]), GradedVector::basis(2).scale(&-e21));
        assert!(cochain_eval(&g, &psi, &[0, 0]).is_zero());
    }

    #[test]
    fn classical_reduction_and_sl2_value() {
        let sl2 = fixtures::sl2();
        let mut psi = GradedCochain::zero(1, sl2.group().zero(), 1);
        psi.set(vec![0], GradedVector::basis(0));
        let d = chevalley_delta(&sl2, &psi).unwrap();
        assert_eq!(d.stored(&[1, 2]), GradedVector::term(0, q(-1)));
        let adj = Connection::adjoint(&sl2, 1).unwrap();
        let mut rng = gen::rng(3);
        let b = random_cochain(&mut rng, &sl2, &adj.target_degrees, 1, &sl2.group().zero());
        let db = covariant_delta(&adj, &b).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let bx = cochain_eval(&sl2, &b, &[x]);
                let by = cochain_eval(&sl2, &b, &[y]);
                let mut want = GradedVector::apply(&adj.action[x], &by);
                want = want.sub(&GradedVector::apply(&adj.action[y], &bx));
                want = want.sub(&eval_vectors(&sl2, &b, &[sl2.bracket_basis(x, y).clone()]));
                assert_eq!(cochain_eval(&sl2, &db, &[x, y]), want);
            }
        }
    }

    #[test]
    fn delta_squared_vanishes_on_trivial_module() {
        for (name, g) in fixtures::corpus() {
            let phi = Connection::trivial(&g);
            for p in 0..=2 {
                for w in interesting_weights(&g, &phi.target_degrees, p) {
                    assert!(flatness_witness(&phi, p + 1, &w).unwrap().is_none(), "{name} p={p} w={w}");
                }
            }
        }
    }

    #[test]
    fn delta_squared_vanishes_on_adjoint_module() {
        for (name, g) in color_lie_corpus() {
            let phi = Connection::adjoint(&g, 1).unwrap();
            for p in 0..=2 {
                for w in interesting_weights(&g, &phi.target_degrees, p) {
                    assert!(flatness_witness(&phi, p + 1, &w).unwrap().is_none(), "{name} p={p} w={w}");
                }
            }
        }
    }

    #[test]
    fn production_delta_matches_naive_oracle() {
        for seed in 0..60 {
            let g = gen::gen_algebra(&gen::config_for(seed));
            let mut rng = gen::rng(seed + 1000);
            let phis = if g.alpha_is_identity() {
                vec![Connection::trivial(&g), Connection::adjoint(&g, 1).unwrap()]
            } else {
                vec![Connection::trivial(&g)]
            };
            for phi in phis {
                for p in 0..=2 {
                    let ws = interesting_weights(&g, &phi.target_degrees, p);
                    let w = &ws[seed as usize % ws.len()];
                    let psi = random_cochain(&mut rng, &g, &phi.target_degrees, p, w);
                    let prod = covariant_delta(&phi, &psi).unwrap();
                    let full = oracle::oracle_delta_full(&phi, &oracle::full_table(&g, &psi), p, w);
                    for (t, v) in &full {
                        assert_eq!(cochain_eval(&g, &prod, t), *v, "seed {seed} p {p} tuple {t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn wedge_leibniz_rule() {
        for (name, g) in color_lie_corpus() {
            let phi = Connection::adjoint(&g, 1).unwrap();
            let scalar = Connection::trivial(&g);
            let mut rng = gen::rng(11);
            for qq in 0..=1 {
                for p in 0..=1 {
                    for z in interesting_weights(&g, &scalar.target_degrees, qq) {
                        for w in interesting_weights(&g, &phi.target_degrees, p).into_iter().take(3) {
                            let zeta = random_cochain(&mut rng, &g, &scalar.target_degrees, qq, &z);
                            let psi = random_cochain(&mut rng, &g, &phi.target_degrees, p, &w);
                            let lhs = covariant_delta(&phi, &wedge_scalar(&g, &zeta, &psi).unwrap()).unwrap();
                            let r1 = wedge_scalar(&g, &chevalley_delta(&g, &zeta).unwrap(), &psi).unwrap();
                            let r2 = wedge_scalar(&g, &zeta, &covariant_delta(&phi, &psi).unwrap()).unwrap();
                            let rhs = r1.add_scaled(&r2, &sign_power(qq));
                            assert_eq!(lhs.first_difference(&rhs), None, "{name} q={qq} p={p} z={z} w={w}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wedge_results_are_graded_skew() {
        for (name, g) in color_lie_corpus() {
            let phi = Connection::adjoint(&g, 1).unwrap();
            let scalar = Connection::trivial(&g);
            let mut rng = gen::rng(5);
            let z = interesting_weights(&g, &scalar.target_degrees, 1).pop().unwrap();
            let zeta = random_cochain(&mut rng, &g, &scalar.target_degrees, 1, &z);
            let w = interesting_weights(&g, &phi.target_degrees, 1).pop().unwrap();
            let psi = random_cochain(&mut rng, &g, &phi.target_degrees, 1, &w);
            let wedge = wedge_scalar(&g, &zeta, &psi).unwrap();
            let br = bracket_wedge(&g, &g, &psi, &psi).unwrap();
            for t in (0..2).map(|_| 0..g.dim()).multi_cartesian_product() {
                assert_eq!(cochain_eval(&g, &wedge, &t), wedge_scalar_at(&g, &zeta, &psi, &t), "{name} {t:?}");
                assert_eq!(cochain_eval(&g, &br, &t), bracket_wedge_at(&g, &g, &psi, &psi, &t), "{name} {t:?}");
            }
        }
    }

    #[test]
    fn bracket_wedge_trivial_grading() {
        let g = fixtures::sl2();
        let mut rng = gen::rng(9);
        let z = g.group().zero();
        let a = random_cochain(&mut rng, &g, &g.degrees(), 1, &z);
        let b = random_cochain(&mut rng, &g, &g.degrees(), 1, &z);
        let br = bracket_wedge(&g, &g, &a, &b).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let want = g
                    .bracket(&cochain_eval(&g, &a, &[x]), &cochain_eval(&g, &b, &[y]))
                    .sub(&g.bracket(&cochain_eval(&g, &a, &[y]), &cochain_eval(&g, &b, &[x])));
                assert_eq!(cochain_eval(&g, &br, &[x, y]), want);
            }
        }
        let ab = fixtures::abelian(2);
        let c = random_cochain(&mut rng, &ab, &ab.degrees(), 1, &z);
        assert!(bracket_wedge(&ab, &ab, &c, &c).unwrap().is_zero());
    }

    #[test]
    fn cohomology_dimensions() {
        let z = crate::grading::GradingGroup::trivial().zero();
        let ab = fixtures::abelian(2);
        assert_eq!(cohomology_space(&Connection::trivial(&ab), 2, &z).unwrap().dim(), 1);
        let sl2 = fixtures::sl2();
        assert_eq!(cohomology_space(&Connection::trivial(&sl2), 2, &z).unwrap().dim(), 0);
        let h = fixtures::heisenberg();
        assert_eq!(cohomology_space(&Connection::trivial(&h), 2, &z).unwrap().dim(), 2);
        let adj = Connection::adjoint(&sl2, 1).unwrap();
        assert_eq!(cohomology_space(&adj, 0, &z).unwrap().dim(), 0);
        assert_eq!(cohomology_space(&Connection::trivial(&sl2), 0, &z).unwrap().dim(), 1);
        for (g, p) in [(ab, 2), (sl2, 2), (h, 2)] {
            let phi = Connection::trivial(&g);
            assert_eq!(cohomology_space(&phi, p, &z).unwrap().dim(), oracle::oracle_cohomology_dim(&phi, p, &z));
        }
    }
}
