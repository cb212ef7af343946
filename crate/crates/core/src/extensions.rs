//! Extensions `0 → h → e → g → 0`: the datum `(φ, ρ)` of a section, the
//! algebra built from a datum, equivalences, splitting, and the obstruction
//! class in `H³(g, Z(h))`.
//!
//! Built extensions use the basis of `h` followed by the basis of `g`, and
//! the twist `α_h ⊕ α_g`. Both `φ_x = [α^{k-1}(s(x)), ·]` and the inner part
//! of the curvature identity are left multiplications; see [`left_term`].

use num_traits::Zero;

use crate::algebra::{check_homomorphism, BasisElement, ColorHomLieAlgebra, GradedVector};
use crate::cochains::{
    bracket_wedge, check_cochain, cochain_eval, cochain_from_fn, cohomology_space, covariant_delta, solve_coboundary, CohomologySpace, Connection, GradedCochain,
};
use crate::derivations::{alpha_power, color_commutator, left_mult, outer_quotient, QuotientSpace};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{one, qf, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub g: ColorHomLieAlgebra,
    pub h: ColorHomLieAlgebra,
    pub k: i64,
    /// `φ_{x}` for each basis element `x` of `g`, acting on `h`.
    pub phi: Vec<Matrix>,
    /// `h`-valued 2-cochain of weight zero on `g`.
    pub rho: GradedCochain,
}

impl ExtensionData {
    pub fn new(g: ColorHomLieAlgebra, h: ColorHomLieAlgebra, k: i64, phi: Vec<Matrix>, rho: GradedCochain) -> Result<Self> {
        if g.eps() != h.eps() {
            return Err(Error::structural("g and h must share the commutation factor"));
        }
        if phi.len() != g.dim() || phi.iter().any(|m| m.rows() != h.dim() || m.cols() != h.dim()) {
            return Err(Error::structural(format!(
                "phi must hold {} matrices of size {}x{}",
                g.dim(),
                h.dim(),
                h.dim()
            )));
        }
        if rho.p != 2 || rho.target_dim != h.dim() || rho.weight != g.group().zero() {
            return Err(Error::structural("rho must be an h-valued 2-cochain of weight zero"));
        }
        let hom = check_cochain(&g, &h.degrees(), &rho);
        if !hom.passed() {
            return Err(Error::structural(format!("rho is not homogeneous: {hom}")));
        }
        Ok(ExtensionData { g, h, k, phi, rho })
    }

    /// `φ = 0`, `ρ = 0`: the direct sum.
    pub fn zero(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64) -> Self {
        ExtensionData {
            g: g.clone(),
            h: h.clone(),
            k,
            phi: vec![Matrix::zeros(h.dim(), h.dim()); g.dim()],
            rho: GradedCochain::zero(2, g.group().zero(), h.dim()),
        }
    }

    pub fn connection(&self) -> Connection {
        Connection::derivation(&self.g, &self.h, self.k, self.phi.clone())
    }

    pub fn rho_at(&self, x: usize, y: usize) -> GradedVector {
        cochain_eval(&self.g, &self.rho, &[x, y])
    }

    /// `Σ_t c_t φ_t` for `x = Σ_t c_t e_t`.
    pub fn phi_of(&self, x: &GradedVector) -> Matrix {
        self.connection().action_of(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSequence {
    pub h: ColorHomLieAlgebra,
    pub e: ColorHomLieAlgebra,
    pub g: ColorHomLieAlgebra,
    /// `dim e × dim h`.
    pub i: Matrix,
    /// `dim g × dim e`.
    pub p: Matrix,
    /// `dim e × dim g`.
    pub s: Option<Matrix>,
}

impl ExtensionSequence {
    /// The inclusion of `g` when `e = h ⊕ g` in that basis order.
    pub fn canonical_section(h_dim: usize, g_dim: usize) -> Matrix {
        let mut s = Matrix::zeros(h_dim + g_dim, g_dim);
        for c in 0..g_dim {
            s[(h_dim + c, c)] = one();
        }
        s
    }
}

/// `L_z = [α^{k-1}(z), ·]` on `h`, the operator `φ_x` takes for an inner lift.
pub fn left_term(h: &ColorHomLieAlgebra, k: i64, z: &GradedVector) -> Result<Matrix> {
    left_mult(h, z, k - 1)
}

fn embed(v: &GradedVector, offset: usize) -> GradedVector {
    GradedVector::from_terms(v.iter().map(|(i, c)| (i + offset, c.clone())))
}

fn preimage(i: &Matrix, w: &GradedVector) -> Option<GradedVector> {
    if w.is_zero() {
        return Some(GradedVector::new());
    }
    i.solve(&w.to_dense(i.rows())).map(|v| GradedVector::from_dense(&v))
}

/// Morphism property of `i` and `p`, exactness, and `p∘s = id` when present.
pub fn check_sequence(seq: &ExtensionSequence) -> Report {
    let mut report = Report::default();
    report.checks.extend(check_homomorphism(&seq.h, &seq.e, &seq.i, "i").checks);
    report.checks.extend(check_homomorphism(&seq.e, &seq.g, &seq.p, "p").checks);
    let mut exact = Check::new("exactness");
    if report.get("i.shape").is_some_and(Check::passed) && report.get("p.shape").is_some_and(Check::passed) {
        let ri = seq.i.rank();
        let rp = seq.p.rank();
        if ri != seq.h.dim() {
            exact.fail(Vec::new(), format!("i is not injective: rank {ri} < {}", seq.h.dim()));
        }
        if rp != seq.g.dim() {
            exact.fail(Vec::new(), format!("p is not surjective: rank {rp} < {}", seq.g.dim()));
        }
        let pi = seq.p.mul(&seq.i);
        if !pi.is_zero() {
            exact.fail(Vec::new(), "p o i != 0");
        }
        if seq.e.dim() != seq.h.dim() + seq.g.dim() {
            exact.fail(Vec::new(), format!("dim e = {} but dim h + dim g = {}", seq.e.dim(), seq.h.dim() + seq.g.dim()));
        }
    } else {
        exact.fail(Vec::new(), "maps of the wrong shape");
    }
    report.push(exact);
    if let Some(s) = &seq.s {
        report.push(check_section(seq, s));
    }
    report
}

/// Degree-zero right inverse of `p`.
pub fn check_section(seq: &ExtensionSequence, s: &Matrix) -> Check {
    let mut c = Check::new("section");
    if s.rows() != seq.e.dim() || s.cols() != seq.g.dim() {
        c.fail(Vec::new(), "section has the wrong shape");
        return c;
    }
    for r in 0..s.rows() {
        for col in 0..s.cols() {
            if !s[(r, col)].is_zero() && seq.e.degree(r) != seq.g.degree(col) {
                c.fail(vec![r, col], "section is not of degree zero");
            }
        }
    }
    if !seq.p.mul(s).is_identity() {
        c.fail(Vec::new(), "p o s != id");
    }
    c
}

/// The section given with the sequence, else the least-pivot solution of
/// `p v = x` inside each degree block.
pub fn default_section(seq: &ExtensionSequence) -> Result<Matrix> {
    if let Some(s) = &seq.s {
        return Ok(s.clone());
    }
    let mut cols = Vec::with_capacity(seq.g.dim());
    for x in 0..seq.g.dim() {
        let block = seq.e.indices_of_degree(seq.g.degree(x));
        let sub = Matrix::from_columns(seq.g.dim(), &block.iter().map(|&c| seq.p.column(c)).collect::<Vec<_>>());
        let target = crate::linalg::unit(seq.g.dim(), x);
        let sol = if block.is_empty() { None } else { sub.solve(&target) }
            .ok_or_else(|| Error::Precondition(format!("no homogeneous preimage of basis element {x} under p")))?;
        let mut v = vec![Q::zero(); seq.e.dim()];
        for (t, &c) in block.iter().enumerate() {
            v[c] = sol[t].clone();
        }
        cols.push(v);
    }
    Ok(Matrix::from_columns(seq.e.dim(), &cols))
}

/// `φ_x(y) = [α^{k-1}(s(x)), y]` and `ρ(x,y) = [s(x),s(y)] - s([x,y])`, read
/// back in `h` through `i`. The returned report is [`check_data`] on the result.
pub fn extract_data(seq: &ExtensionSequence, s: &Matrix, k: i64) -> Result<(ExtensionData, Report)> {
    let structure = check_sequence(&ExtensionSequence {
        s: Some(s.clone()),
        ..seq.clone()
    });
    if !structure.passed() {
        return Err(Error::Precondition(format!("not an extension with this section: {structure}")));
    }
    let (g, h, e) = (&seq.g, &seq.h, &seq.e);
    let ak = alpha_power(e, k - 1)?;
    let sx: Vec<GradedVector> = (0..g.dim()).map(|x| GradedVector::from_dense(&s.column(x))).collect();
    let iy: Vec<GradedVector> = (0..h.dim()).map(|y| GradedVector::from_dense(&seq.i.column(y))).collect();
    let mut phi = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let a = GradedVector::apply(&ak, &sx[x]);
        let mut cols = Vec::with_capacity(h.dim());
        for y in &iy {
            let v = e.bracket(&a, y);
            let pre = preimage(&seq.i, &v)
                .ok_or_else(|| Error::Precondition(format!("[alpha^(k-1) s(x{x}), i(y)] leaves the image of i")))?;
            cols.push(pre.to_dense(h.dim()));
        }
        phi.push(Matrix::from_columns(h.dim(), &cols));
    }
    let mut failure = None;
    let rho = cochain_from_fn(g, 2, g.group().zero(), h.dim(), |t| {
        let (x, y) = (t[0], t[1]);
        let v = e.bracket(&sx[x], &sx[y]).sub(&GradedVector::apply(s, g.bracket_basis(x, y)));
        preimage(&seq.i, &v).unwrap_or_else(|| {
            failure = Some((x, y));
            GradedVector::new()
        })
    });
    if let Some((x, y)) = failure {
        return Err(Error::Precondition(format!("curvature on ({x},{y}) leaves the image of i")));
    }
    let data = ExtensionData::new(g.clone(), h.clone(), k, phi, rho)?;
    let report = check_data(&data)?;
    Ok((data, report))
}

/// `ε(z,x)(φ_x ρ(y,z) - ρ([x,y], α z))` summed cyclically.
pub fn cyclic_curvature_sum(data: &ExtensionData, x: usize, y: usize, z: usize) -> GradedVector {
    let g = &data.g;
    let mut out = GradedVector::new();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let mut term = GradedVector::apply(&data.phi[a], &data.rho_at(b, c));
        let br = g.bracket_basis(a, b).clone();
        let ac = g.alpha_basis(c);
        term = term.sub(&crate::cochains::eval_vectors(g, &data.rho, &[br, ac]));
        out.add_scaled(&term, &g.eps_basis(c, a));
    }
    out
}

/// Derivation membership of each `φ_x`, the curvature identity
/// `[φ_x, φ_y] - φ_{[x,y]} = L_{ρ(x,y)}`, and the Bianchi identity both as
/// the cyclic display and as `δ_φ ρ = 0`, with the two compared.
pub fn check_data(data: &ExtensionData) -> Result<Report> {
    let (g, h, k) = (&data.g, &data.h, data.k);
    let conn = data.connection();
    let mut report = conn.validate()?;
    let mut eq14 = Check::new("curvature");
    let mut unfixed = Vec::new();
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            let r = data.rho_at(x, y);
            if x <= y && h.apply_alpha(&r) != r {
                unfixed.push(format!("({x},{y})"));
            }
            let lhs = color_commutator(h, &data.phi[x], g.degree(x), &data.phi[y], g.degree(y))
                .sub(&data.phi_of(g.bracket_basis(x, y)));
            let rhs = left_term(h, k, &data.rho_at(x, y))?;
            if lhs != rhs {
                eq14.fail(vec![x, y], format!("[phi_{x},phi_{y}] - phi_[x,y] differs from L(rho(x{x},x{y}))"));
            }
        }
    }
    if !unfixed.is_empty() {
        eq14.note(format!(
            "rho not alpha-fixed on {}; the inner term is the left multiplication by alpha^(k-1)(rho(x,y))",
            unfixed.join(" ")
        ));
    }
    report.push(eq14);
    let delta = covariant_delta(&conn, &data.rho)?;
    let mut cyc = Check::new("bianchi.cyclic");
    let mut del = Check::new("bianchi.delta");
    let mut agree = Check::new("bianchi.agreement");
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            for z in 0..g.dim() {
                let c = cyclic_curvature_sum(data, x, y, z);
                let d = cochain_eval(g, &delta, &[x, y, z]);
                if !c.is_zero() {
                    cyc.fail(vec![x, y, z], format!("cyclic sum = {c}"));
                }
                if !d.is_zero() && x <= y && y <= z {
                    del.fail(vec![x, y, z], format!("delta rho = {d}"));
                }
                if d != c.scale(&g.eps_basis(x, z)) {
                    agree.fail(vec![x, y, z], format!("delta rho = {d} but eps(x,z) * cyclic sum = {}", c.scale(&g.eps_basis(x, z))));
                }
            }
        }
    }
    report.push(cyc);
    report.push(del);
    report.push(agree);
    Ok(report)
}

/// `α_h φ_x = φ_{α x} α_h` and `α_h ρ(x,y) = ρ(α x, α y)`.
pub fn alpha_compatibility(data: &ExtensionData) -> Report {
    let (g, h) = (&data.g, &data.h);
    let mut phi_c = Check::new("alpha_compat.phi");
    for x in 0..g.dim() {
        let lhs = h.alpha().mul(&data.phi[x]);
        let rhs = data.phi_of(&g.alpha_basis(x)).mul(h.alpha());
        if lhs != rhs {
            phi_c.fail(vec![x], format!("alpha_h phi_{x} != phi_(alpha x) alpha_h"));
        }
    }
    let mut rho_c = Check::new("alpha_compat.rho");
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            let lhs = h.apply_alpha(&data.rho_at(x, y));
            let rhs = crate::cochains::eval_vectors(g, &data.rho, &[g.alpha_basis(x), g.alpha_basis(y)]);
            if lhs != rhs {
                rho_c.fail(vec![x, y], "alpha_h rho(x,y) != rho(alpha x, alpha y)");
            }
        }
    }
    let mut r = Report::default();
    r.push(phi_c);
    r.push(rho_c);
    r
}

fn prefixed_basis(h: &ColorHomLieAlgebra, g: &ColorHomLieAlgebra) -> Vec<BasisElement> {
    let clash = h.basis().iter().any(|b| g.index_of(&b.name).is_some());
    let mut out = Vec::new();
    for b in h.basis() {
        let name = if clash { format!("h.{}", b.name) } else { b.name.clone() };
        out.push(BasisElement::new(name, b.degree.clone()));
    }
    for b in g.basis() {
        let name = if clash { format!("g.{}", b.name) } else { b.name.clone() };
        out.push(BasisElement::new(name, b.degree.clone()));
    }
    out
}

/// `[y₁+x₁, y₂+x₂] = [y₁,y₂] + φ_{x₁}y₂ - ε(y₁,x₂)φ_{x₂}y₁ + ρ(x₁,x₂) + [x₁,x₂]`
/// on `e = h ⊕ g`, with `α_e = α_h ⊕ α_g`.
pub fn build_extension(data: &ExtensionData) -> Result<ExtensionSequence> {
    let rep = check_data(data)?;
    if !rep.passed() {
        return Err(Error::Precondition(format!("datum fails its identities:\n{rep}")));
    }
    let (g, h) = (&data.g, &data.h);
    let (m, n) = (h.dim(), g.dim());
    let dim = m + n;
    let mut table = vec![GradedVector::new(); dim * dim];
    for a in 0..m {
        for b in 0..m {
            table[a * dim + b] = h.bracket_basis(a, b).clone();
        }
    }
    for x in 0..n {
        for b in 0..m {
            let v = GradedVector::from_dense(&data.phi[x].column(b));
            table[(m + x) * dim + b] = v.clone();
            table[b * dim + m + x] = v.scale(&-g.eps().eval(h.degree(b), g.degree(x)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            table[(m + x) * dim + m + y] = data.rho_at(x, y).add(&embed(g.bracket_basis(x, y), m));
        }
    }
    let e = ColorHomLieAlgebra::from_table(g.eps().clone(), prefixed_basis(h, g), table, h.alpha().direct_sum(g.alpha()))?;
    let v = e.validate();
    if let Some(c) = v.checks.iter().find(|c| !c.passed()) {
        let loc = c.violations.first().map(|v| v.location.clone()).unwrap_or_default();
        return Err(Error::InternalConsistency(format!("built extension fails {} at {loc:?}", c.name)));
    }
    let mut i = Matrix::zeros(dim, m);
    for a in 0..m {
        i[(a, a)] = one();
    }
    let mut p = Matrix::zeros(n, dim);
    for x in 0..n {
        p[(x, m + x)] = one();
    }
    Ok(ExtensionSequence {
        h: h.clone(),
        e,
        g: g.clone(),
        i,
        p,
        s: Some(ExtensionSequence::canonical_section(m, n)),
    })
}

fn check_b(data: &ExtensionData, b: &Matrix) -> Result<()> {
    let (g, h) = (&data.g, &data.h);
    if b.rows() != h.dim() || b.cols() != g.dim() {
        return Err(Error::structural(format!("b must be {}x{}", h.dim(), g.dim())));
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            if !b[(r, c)].is_zero() && h.degree(r) != g.degree(c) {
                return Err(Error::Precondition(format!("b is not of degree zero at ({r},{c})")));
            }
        }
    }
    Ok(())
}

/// `b` as an `h`-valued 1-cochain of weight zero.
pub fn b_cochain(data: &ExtensionData, b: &Matrix) -> GradedCochain {
    cochain_from_fn(&data.g, 1, data.g.group().zero(), data.h.dim(), |t| GradedVector::from_dense(&b.column(t[0])))
}

/// `φ'_x = φ_x + L_{b(x)}`, `ρ' = ρ + δ_φ b + ½[b,b]_∧`.
pub fn transform_data_by_b(data: &ExtensionData, b: &Matrix) -> Result<ExtensionData> {
    check_b(data, b)?;
    let (g, h, k) = (&data.g, &data.h, data.k);
    let mut phi = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let bx = GradedVector::from_dense(&b.column(x));
        phi.push(data.phi[x].add(&left_term(h, k, &bx)?));
    }
    let bc = b_cochain(data, b);
    let db = covariant_delta(&data.connection(), &bc)?;
    let bb = bracket_wedge(g, h, &bc, &bc)?;
    let rho = data.rho.add(&db).add_scaled(&bb, &qf(1, 2));
    ExtensionData::new(g.clone(), h.clone(), k, phi, rho)
}

/// `y + x ↦ y - b(x) + x` on `h ⊕ g`.
pub fn equivalence_map(h_dim: usize, g_dim: usize, b: &Matrix) -> Matrix {
    let dim = h_dim + g_dim;
    let mut f = Matrix::identity(dim);
    for r in 0..h_dim {
        for c in 0..g_dim {
            f[(r, h_dim + c)] = -b[(r, c)].clone();
        }
    }
    f
}

/// `f: e₁ → e₂` is an isomorphism of hom-Lie color algebras with
/// `f∘i₁ = i₂` and `p₂∘f = p₁`.
pub fn check_extension_equivalence(s1: &ExtensionSequence, s2: &ExtensionSequence, f: &Matrix) -> Report {
    let mut report = check_homomorphism(&s1.e, &s2.e, f, "f");
    let mut c = Check::new("f.equivalence");
    if f.rows() == f.cols() && f.determinant().is_zero() {
        c.fail(Vec::new(), "f is not invertible");
    }
    if report.get("f.shape").is_some_and(Check::passed) {
        if f.mul(&s1.i) != s2.i {
            c.fail(Vec::new(), "f o i1 != i2");
        }
        if s2.p.mul(f) != s1.p {
            c.fail(Vec::new(), "p2 o f != p1");
        }
    }
    report.push(c);
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub equivalent: bool,
    pub phi_difference: Option<usize>,
    pub rho_difference: Option<Vec<usize>>,
}

/// Whether `transform_data_by_b(d1, b) = d2`, naming the first mismatch.
pub fn check_equivalence_by_b(d1: &ExtensionData, d2: &ExtensionData, b: &Matrix) -> Result<EquivalenceCheck> {
    if d1.g != d2.g || d1.h != d2.h || d1.k != d2.k {
        return Err(Error::Precondition("data must share g, h and k".into()));
    }
    let t = transform_data_by_b(d1, b)?;
    let phi_difference = (0..t.phi.len()).find(|&x| t.phi[x] != d2.phi[x]);
    let rho_difference = t.rho.first_difference(&d2.rho);
    Ok(EquivalenceCheck {
        equivalent: phi_difference.is_none() && rho_difference.is_none(),
        phi_difference,
        rho_difference,
    })
}

/// `ρ = -δ_φ b - ½[b,b]_∧` and `φ_x = -L_{b(x)}`; the datum then transforms to `(0, 0)`.
pub fn split_verify(data: &ExtensionData, b: &Matrix) -> Result<bool> {
    let t = transform_data_by_b(data, b)?;
    Ok(t.rho.is_zero() && t.phi.iter().all(Matrix::is_zero))
}

/// For abelian `h`: some `b` with `δ_φ b = -ρ`, if one exists.
pub fn split_solve(data: &ExtensionData) -> Result<Option<Matrix>> {
    if !data.h.is_abelian() {
        return Err(Error::Unsupported("split solving is linear only for abelian h".into()));
    }
    if !data.phi.iter().all(Matrix::is_zero) {
        return Ok(None);
    }
    let target = data.rho.scale(&-one());
    let sol = solve_coboundary(&data.connection(), &target)?;
    Ok(sol.map(|nu| {
        let mut b = Matrix::zeros(data.h.dim(), data.g.dim());
        for (t, v) in nu.entries() {
            for (r, c) in v.iter() {
                b[(r, t[0])] = c.clone();
            }
        }
        b
    }))
}

/// `φ̄ = π∘φ`: one class per basis element of `g`, in the complement
/// coordinates of the quotient of the matching degree.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub quotients: Vec<QuotientSpace>,
    pub classes: Vec<Vec<Q>>,
    pub report: Report,
}

pub fn induced_phibar(data: &ExtensionData) -> Result<InducedMap> {
    let (g, h, k) = (&data.g, &data.h, data.k);
    let mut quotients = Vec::new();
    let mut classes = Vec::new();
    let mut member = Check::new("phibar.membership");
    for x in 0..g.dim() {
        let q = outer_quotient(h, k, g.degree(x))?;
        match q.project(&data.phi[x]) {
            Some(c) => classes.push(c),
            None => {
                member.fail(vec![x], format!("phi_{x} is not an alpha^k-derivation"));
                classes.push(Vec::new());
            }
        }
        quotients.push(q);
    }
    let mut hom = Check::new("phibar.homomorphism");
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            let d = g.group().add(g.degree(x), g.degree(y))?;
            let q = outer_quotient(h, k, &d)?;
            let m = color_commutator(h, &data.phi[x], g.degree(x), &data.phi[y], g.degree(y))
                .sub(&data.phi_of(g.bracket_basis(x, y)));
            match q.project(&m) {
                Some(c) if c.iter().all(Zero::is_zero) => {}
                Some(_) => hom.fail(vec![x, y], "[phibar_x, phibar_y] != phibar_[x,y]"),
                None => hom.fail(vec![x, y], "[phi_x, phi_y] - phi_[x,y] is not an alpha^k-derivation"),
            }
        }
    }
    let mut report = Report::default();
    report.push(member);
    report.push(hom);
    Ok(InducedMap {
        quotients,
        classes,
        report,
    })
}

/// For centerless `h` and a lift `φ`: the unique `ρ` with
/// `L_{ρ(x,y)} = [φ_x, φ_y] - φ_{[x,y]}`.
pub fn reconstruct_rho(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64, phi: &[Matrix]) -> Result<GradedCochain> {
    let hd = h.dim();
    let lcols: Vec<Vec<Q>> = (0..hd)
        .map(|t| left_term(h, k, &GradedVector::basis(t)).map(|m| m.entries().to_vec()))
        .collect::<Result<_>>()?;
    let lmap = Matrix::from_columns(hd * hd, &lcols);
    if lmap.rank() < hd {
        return Err(Error::Precondition("z -> L_z is not injective; h has a center".into()));
    }
    let conn = Connection::derivation(g, h, k, phi.to_vec());
    let mut failure = None;
    let rho = cochain_from_fn(g, 2, g.group().zero(), hd, |t| {
        let (x, y) = (t[0], t[1]);
        let m = color_commutator(h, &phi[x], g.degree(x), &phi[y], g.degree(y)).sub(&conn.action_of(g.bracket_basis(x, y)));
        match lmap.solve(m.entries()) {
            Some(z) => GradedVector::from_dense(&z),
            None => {
                failure = Some((x, y));
                GradedVector::new()
            }
        }
    });
    if let Some((x, y)) = failure {
        return Err(Error::Precondition(format!("[phi_x, phi_y] - phi_[x,y] is not inner on ({x},{y})")));
    }
    Ok(rho)
}

/// `Z(h)` as a `g`-module through a lift `φ`.
#[derive(Clone, Debug)]
pub struct CenterModule {
    pub basis: Vec<GradedVector>,
    /// `dim h × dim Z(h)`, columns the basis.
    pub inclusion: Matrix,
    pub connection: Connection,
}

impl CenterModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an `h`-valued cochain with central values.
    pub fn restrict(&self, psi: &GradedCochain) -> Option<GradedCochain> {
        let mut out = GradedCochain::zero(psi.p, psi.weight.clone(), self.dim());
        for (t, v) in psi.entries() {
            let c = self.inclusion.solve(&v.to_dense(self.inclusion.rows()))?;
            out.set(t.clone(), GradedVector::from_dense(&c));
        }
        Some(out)
    }

    pub fn lift(&self, psi: &GradedCochain) -> GradedCochain {
        psi.map_values(&self.inclusion)
    }
}

pub fn center_module(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64, phi: &[Matrix]) -> Result<CenterModule> {
    let basis = h.center();
    let cols: Vec<Vec<Q>> = basis.iter().map(|v| v.to_dense(h.dim())).collect();
    let inclusion = if cols.is_empty() {
        Matrix::zeros(h.dim(), 0)
    } else {
        Matrix::from_columns(h.dim(), &cols)
    };
    let degrees = basis
        .iter()
        .map(|v| h.homogeneous_degree(v).expect("center basis is homogeneous"))
        .collect::<Vec<_>>();
    let mut action = Vec::with_capacity(g.dim());
    for (x, m) in phi.iter().enumerate() {
        let mut img = Vec::with_capacity(basis.len());
        for v in &basis {
            let w = GradedVector::apply(m, v).to_dense(h.dim());
            let c = inclusion
                .solve(&w)
                .ok_or_else(|| Error::Precondition(format!("phi_{x} does not preserve the center of h")))?;
            img.push(c);
        }
        action.push(if img.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_columns(basis.len(), &img)
        });
    }
    Ok(CenterModule {
        basis,
        inclusion,
        connection: Connection::module(g, degrees, k, action),
    })
}

#[derive(Clone, Debug)]
pub struct ObstructionResult {
    /// `δ_φ ρ`, `h`-valued.
    pub lambda: GradedCochain,
    pub trivial: bool,
    /// `h`-valued 2-cochain with central values and `δ ν = λ`.
    pub witness_nu: Option<GradedCochain>,
    /// The curvature identity for the given pair, reported not enforced.
    pub preconditions: Report,
}

/// `λ = δ_φ ρ`, checked central, and decided exact or not in `H³(g, Z(h))`.
pub fn obstruction_class(
    g: &ColorHomLieAlgebra,
    h: &ColorHomLieAlgebra,
    k: i64,
    phi: &[Matrix],
    rho: &GradedCochain,
) -> Result<ObstructionResult> {
    let data = ExtensionData::new(g.clone(), h.clone(), k, phi.to_vec(), rho.clone())?;
    let mut preconditions = Report::default();
    if let Some(c) = check_data(&data)?.checks.into_iter().find(|c| c.name == "curvature") {
        preconditions.push(c);
    }
    let lambda = covariant_delta(&data.connection(), rho)?;
    let zm = center_module(g, h, k, phi)?;
    let lz = zm
        .restrict(&lambda)
        .ok_or_else(|| Error::Precondition("datum inconsistency: lambda has a value outside Z(h)".into()))?;
    let nu = solve_coboundary(&zm.connection, &lz)?;
    if let Some(nu) = &nu {
        if covariant_delta(&zm.connection, nu)? != lz {
            return Err(Error::InternalConsistency("solved nu does not reproduce lambda".into()));
        }
    }
    Ok(ObstructionResult {
        lambda,
        trivial: nu.is_some(),
        witness_nu: nu.map(|n| zm.lift(&n)),
        preconditions,
    })
}

/// `λ(φ₁,ρ₁) - λ(φ₂,ρ₂)` is a coboundary in `Z(h)`-valued cochains.
pub fn lift_independence_check(
    g: &ColorHomLieAlgebra,
    h: &ColorHomLieAlgebra,
    k: i64,
    lift1: (&[Matrix], &GradedCochain),
    lift2: (&[Matrix], &GradedCochain),
) -> Result<bool> {
    let o1 = obstruction_class(g, h, k, lift1.0, lift1.1)?;
    let o2 = obstruction_class(g, h, k, lift2.0, lift2.1)?;
    let z1 = center_module(g, h, k, lift1.0)?;
    let z2 = center_module(g, h, k, lift2.0)?;
    if z1.connection.action != z2.connection.action {
        return Ok(false);
    }
    let diff = z1
        .restrict(&o1.lambda.sub(&o2.lambda))
        .ok_or_else(|| Error::Precondition("lambda difference is not central".into()))?;
    Ok(solve_coboundary(&z1.connection, &diff)?.is_some())
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub cohomology: CohomologySpace,
    /// One datum per representative of `H²(g, h)`, the split class excluded.
    pub data: Vec<ExtensionData>,
    pub report: Report,
}

/// Extensions of `g` by abelian `h` with a fixed homomorphic action `φ`,
/// up to equivalence: one for each class in `H²(g, h)`.
pub fn parameterize_extensions(g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64, phi: &[Matrix]) -> Result<Classification> {
    if !h.is_abelian() {
        return Err(Error::Unsupported("classification by H^2 needs an abelian h".into()));
    }
    let base = ExtensionData::new(g.clone(), h.clone(), k, phi.to_vec(), GradedCochain::zero(2, g.group().zero(), h.dim()))?;
    let pre = check_data(&base)?;
    if !pre.passed() {
        return Err(Error::Precondition(format!("phi is not a homomorphism into Der:\n{pre}")));
    }
    let conn = Connection::module(g, h.degrees(), k, phi.to_vec());
    let cohomology = cohomology_space(&conn, 2, &g.group().zero())?;
    let reps = cohomology.representative_cochains(h.dim());
    let data: Vec<ExtensionData> = reps
        .iter()
        .map(|r| ExtensionData::new(g.clone(), h.clone(), k, phi.to_vec(), r.clone()))
        .collect::<Result<_>>()?;
    let mut valid = Check::new("classification.valid_data");
    let mut shifted = Check::new("classification.coboundary_shift_equivalent");
    let mut distinct = Check::new("classification.representatives_inequivalent");
    let b = shift_witness(&base);
    let mut all = vec![base.clone()];
    all.extend(data.iter().cloned());
    for (t, d) in all.iter().enumerate() {
        if !check_data(d)?.passed() || build_extension(d).is_err() {
            valid.fail(vec![t], "representative datum does not build an extension");
        }
        let moved = transform_data_by_b(d, &b)?;
        if !check_equivalence_by_b(d, &moved, &b)?.equivalent {
            shifted.fail(vec![t], "coboundary shift not recognised as equivalent");
        }
    }
    for a in 0..all.len() {
        for c in a + 1..all.len() {
            let diff = ExtensionData::new(g.clone(), h.clone(), k, phi.to_vec(), all[a].rho.sub(&all[c].rho))?;
            if split_solve(&diff)?.is_some() {
                distinct.fail(vec![a, c], "two representatives differ by a coboundary");
            }
        }
    }
    let mut report = Report::default();
    report.push(valid);
    report.push(shifted);
    report.push(distinct);
    Ok(Classification {
        cohomology,
        data,
        report,
    })
}

/// Deterministic degree-zero `b` with every allowed entry set to one.
fn shift_witness(data: &ExtensionData) -> Matrix {
    let (g, h) = (&data.g, &data.h);
    let mut b = Matrix::zeros(h.dim(), g.dim());
    for r in 0..h.dim() {
        for c in 0..g.dim() {
            if h.degree(r) == g.degree(c) {
                b[(r, c)] = one();
            }
        }
    }
    b
}

/// Values of `ρ` on the stored tuples, used in reports.
pub fn describe_rho(data: &ExtensionData) -> Vec<(Vec<usize>, GradedVector)> {
    data.rho.entries().map(|(t, v)| (t.clone(), v.clone())).collect()
}
