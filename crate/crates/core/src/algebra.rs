//! Hom-Lie color algebras `(g, [,], ε, α)` stored by structure constants.
//!
//! The bracket table is kept for every ordered pair of basis indices. The
//! checked constructor fills in missing reverse pairs by ε-skew symmetry, so
//! an algebra that came through [`ColorHomLieAlgebra::from_brackets`] always
//! satisfies the grading and skew axioms; [`ColorHomLieAlgebra::from_table`]
//! bypasses that and is what the perturbation tests and checkers work against.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{CommutationFactor, Degree, GradingGroup};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{one, Q};

/// Sparse vector over a basis; explicit zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVector(BTreeMap<usize, Q>);

impl GradedVector {
    pub fn new() -> Self {
        GradedVector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, one())
    }

    pub fn term(i: usize, c: Q) -> Self {
        let mut v = Self::new();
        v.add_term(i, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut v = Self::new();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    pub fn from_dense(coeffs: &[Q]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); dim];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (&i, c) in &other.0 {
            self.add_term(i, &(c * s));
        }
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        let mut v = self.clone();
        v.add_scaled(other, &one());
        v
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        let mut v = self.clone();
        v.add_scaled(other, &-one());
        v
    }

    pub fn scale(&self, s: &Q) -> GradedVector {
        let mut v = GradedVector::new();
        v.add_scaled(self, s);
        v
    }

    pub fn neg(&self) -> GradedVector {
        self.scale(&-one())
    }

    /// `M · v` with `v` read as a column vector.
    pub fn apply(m: &Matrix, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::new();
        for (j, c) in v.iter() {
            for r in 0..m.rows() {
                let e = &m[(r, j)];
                if !e.is_zero() {
                    out.add_term(r, &(e * c));
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(i, c)| format!("{c}*e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: Degree,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: Degree) -> Self {
        BasisElement {
            name: name.into(),
            degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorHomLieAlgebra {
    eps: CommutationFactor,
    basis: Vec<BasisElement>,
    table: Vec<GradedVector>,
    alpha: Matrix,
}

impl ColorHomLieAlgebra {
    /// Raw constructor: `table[i * n + j]` is `[e_i, e_j]`. Only shapes are checked.
    pub fn from_table(
        eps: CommutationFactor,
        basis: Vec<BasisElement>,
        table: Vec<GradedVector>,
        alpha: Matrix,
    ) -> Result<Self> {
        let n = basis.len();
        check_basis(&eps, &basis)?;
        if table.len() != n * n {
            return Err(Error::structural(format!("bracket table must hold {} entries", n * n)));
        }
        if let Some(bad) = table.iter().filter_map(GradedVector::max_index).find(|&m| m >= n) {
            return Err(Error::structural(format!("bracket value uses index {bad} >= {n}")));
        }
        check_alpha_shape(&alpha, n)?;
        Ok(ColorHomLieAlgebra {
            eps,
            basis,
            table,
            alpha,
        })
    }

    /// Builds from brackets on any set of ordered pairs. Missing reverse pairs
    /// are completed by ε-skew symmetry; conflicting definitions, wrongly
    /// graded values, a non-degree-zero α and diagonal brackets on elements
    /// with `ε(x,x) = 1` are rejected.
    pub fn from_brackets(
        eps: CommutationFactor,
        basis: Vec<BasisElement>,
        brackets: &[(usize, usize, GradedVector)],
        alpha: Matrix,
    ) -> Result<Self> {
        let n = basis.len();
        check_basis(&eps, &basis)?;
        check_alpha_shape(&alpha, n)?;
        let mut stored: BTreeMap<(usize, usize), GradedVector> = BTreeMap::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::structural(format!("bracket pair ({i}, {j}) out of range")));
            }
            if let Some(bad) = v.max_index().filter(|&m| m >= n) {
                return Err(Error::structural(format!(
                    "bracket ({i}, {j}) uses index {bad} >= {n}"
                )));
            }
            if stored.insert((i, j), v.clone()).is_some() {
                return Err(Error::Skew {
                    i,
                    j,
                    message: "pair defined twice".into(),
                });
            }
        }
        let mut table = vec![GradedVector::new(); n * n];
        for (&(i, j), v) in &stored {
            let e = eps.eval(&basis[i].degree, &basis[j].degree);
            let target = eps.group().add(&basis[i].degree, &basis[j].degree)?;
            if let Some(bad) = v.support().find(|&r| basis[r].degree != target) {
                return Err(Error::Grading {
                    i,
                    j,
                    message: format!(
                        "component e{bad} has degree {}, expected {target}",
                        basis[bad].degree
                    ),
                });
            }
            if i == j {
                if !v.is_zero() && !(e == -one()) {
                    return Err(Error::Skew {
                        i,
                        j,
                        message: "diagonal bracket on an element with eps(x,x) = 1 must vanish".into(),
                    });
                }
                table[i * n + i] = v.clone();
                continue;
            }
            let reverse = v.scale(&-eps.eval(&basis[j].degree, &basis[i].degree));
            if let Some(w) = stored.get(&(j, i)) {
                if *w != reverse {
                    return Err(Error::Skew {
                        i,
                        j,
                        message: format!("[e{j},e{i}] = {w} conflicts with -eps*[e{i},e{j}] = {reverse}"),
                    });
                }
            }
            table[i * n + j] = v.clone();
            table[j * n + i] = reverse;
        }
        let alg = ColorHomLieAlgebra {
            eps,
            basis,
            table,
            alpha,
        };
        if let Some(v) = alg.alpha_degree_check().violations.first() {
            return Err(Error::structural(format!("alpha is not of degree zero: {}", v.message)));
        }
        Ok(alg)
    }

    /// The abelian algebra on the given basis.
    pub fn abelian(eps: CommutationFactor, basis: Vec<BasisElement>, alpha: Matrix) -> Result<Self> {
        Self::from_brackets(eps, basis, &[], alpha)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eps(&self) -> &CommutationFactor {
        &self.eps
    }

    pub fn group(&self) -> &GradingGroup {
        self.eps.group()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.basis[i].degree
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.basis.iter().map(|b| b.degree.clone()).collect()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn alpha_pow(&self, k: usize) -> Matrix {
        self.alpha.pow(k)
    }

    pub fn table(&self) -> &[GradedVector] {
        &self.table
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &GradedVector {
        &self.table[i * self.dim() + j]
    }

    /// ε on the degrees of two basis elements.
    pub fn eps_basis(&self, i: usize, j: usize) -> Q {
        self.eps.eval(self.degree(i), self.degree(j))
    }

    pub fn bracket(&self, x: &GradedVector, y: &GradedVector) -> GradedVector {
        let mut out = GradedVector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = self.bracket_basis(i, j);
                if !v.is_zero() {
                    out.add_scaled(v, &(a * b));
                }
            }
        }
        out
    }

    pub fn apply_alpha(&self, x: &GradedVector) -> GradedVector {
        GradedVector::apply(&self.alpha, x)
    }

    pub fn alpha_basis(&self, i: usize) -> GradedVector {
        GradedVector::from_dense(&self.alpha.column(i))
    }

    /// Degree of `x` if it is homogeneous (the zero vector has every degree; `None`).
    pub fn homogeneous_degree(&self, x: &GradedVector) -> Option<Degree> {
        let mut degs = x.support().map(|i| self.degree(i).clone());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Distinct degrees in order of first appearance.
    pub fn distinct_degrees(&self) -> Vec<Degree> {
        let mut seen = HashSet::new();
        self.basis
            .iter()
            .filter(|b| seen.insert(b.degree.clone()))
            .map(|b| b.degree.clone())
            .collect()
    }

    pub fn indices_of_degree(&self, d: &Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == d).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(GradedVector::is_zero)
    }

    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        check_alpha_shape(&alpha, self.dim())?;
        let mut a = self.clone();
        a.alpha = alpha;
        Ok(a)
    }

    /// Overwrites one ordered pair of the table without touching its reverse.
    pub fn with_table_entry(&self, i: usize, j: usize, value: GradedVector) -> Self {
        let mut a = self.clone();
        let n = a.dim();
        a.table[i * n + j] = value;
        a
    }

    /// Nonzero brackets on pairs `i <= j`; the rest follow by skew symmetry.
    pub fn canonical_brackets(&self) -> Vec<(usize, usize, GradedVector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = self.bracket_basis(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    fn alpha_degree_check(&self) -> Check {
        let mut check = Check::new("alpha_degree_zero");
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if !self.alpha[(r, c)].is_zero() && self.degree(r) != self.degree(c) {
                    check.fail(
                        vec![r, c],
                        format!("alpha maps e{c} of degree {} onto e{r} of degree {}", self.degree(c), self.degree(r)),
                    );
                }
            }
        }
        check
    }

    /// Every component of `[e_i,e_j]` has degree `deg e_i + deg e_j`, and α has degree zero.
    pub fn check_grading(&self) -> Report {
        let n = self.dim();
        let mut check = Check::new("grading");
        for i in 0..n {
            for j in 0..n {
                let target = self.group().add(self.degree(i), self.degree(j)).expect("same group");
                for (r, c) in self.bracket_basis(i, j).iter() {
                    if *self.degree(r) != target {
                        check.fail(
                            vec![i, j],
                            format!(
                                "[e{i},e{j}] has component {c}*e{r} of degree {}, expected {target}",
                                self.degree(r)
                            ),
                        );
                    }
                }
            }
        }
        let mut report = Report::default();
        report.push(check);
        report.push(self.alpha_degree_check());
        report
    }

    /// `[e_i,e_j] = -ε(e_i,e_j)[e_j,e_i]` for all pairs, diagonal included.
    pub fn check_skew(&self) -> Report {
        let n = self.dim();
        let mut check = Check::new("skew");
        for i in 0..n {
            for j in i..n {
                let e = self.eps_basis(i, j);
                let lhs = self.bracket_basis(i, j);
                let rhs = self.bracket_basis(j, i).scale(&-e);
                if *lhs != rhs {
                    check.fail(
                        vec![i, j],
                        format!("[e{i},e{j}] = {lhs} but -eps[e{j},e{i}] = {rhs}"),
                    );
                }
            }
        }
        let mut report = Report::default();
        report.push(check);
        report
    }

    /// `ε(z,x)[αx,[y,z]] + ε(x,y)[αy,[z,x]] + ε(y,z)[αz,[x,y]]` on basis elements.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> GradedVector {
        self.jacobiator_with(&self.alpha, x, y, z)
    }

    fn jacobiator_with(&self, alpha: &Matrix, x: usize, y: usize, z: usize) -> GradedVector {
        let mut out = GradedVector::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = self.bracket_basis(b, c);
            if inner.is_zero() {
                continue;
            }
            let alpha_a = GradedVector::from_dense(&alpha.column(a));
            let term = self.bracket(&alpha_a, inner);
            out.add_scaled(&term, &self.eps_basis(c, a));
        }
        out
    }

    /// ε-hom-Jacobi identity. Scans `i ≤ j ≤ k` unless `full_scan`, which
    /// visits every ordered triple. Assumes skew symmetry (see [`Self::check_skew`]).
    pub fn check_hom_jacobi_scan(&self, full_scan: bool) -> Report {
        self.jacobi_scan(&self.alpha, full_scan, "hom_jacobi")
    }

    pub fn check_hom_jacobi(&self) -> Report {
        self.check_hom_jacobi_scan(false)
    }

    /// The generalized Jacobi identity of the underlying bracket, i.e. the
    /// hom-Jacobi identity with α replaced by the identity.
    pub fn check_color_jacobi(&self) -> Report {
        self.jacobi_scan(&Matrix::identity(self.dim()), false, "color_jacobi")
    }

    fn jacobi_scan(&self, alpha: &Matrix, full_scan: bool, name: &str) -> Report {
        let n = self.dim();
        let mut check = Check::new(name);
        for i in 0..n {
            for j in if full_scan { 0 } else { i }..n {
                for k in if full_scan { 0 } else { j }..n {
                    let v = self.jacobiator_with(alpha, i, j, k);
                    if !v.is_zero() {
                        check.fail(vec![i, j, k], format!("cyclic sum on (e{i},e{j},e{k}) = {v}"));
                    }
                }
            }
        }
        if !full_scan {
            check.note("unordered triples i <= j <= k; permutation covariance follows from skew symmetry");
        }
        let mut report = Report::default();
        report.push(check);
        report
    }

    /// `α([e_i,e_j]) = [α e_i, α e_j]` on all pairs.
    pub fn check_multiplicative(&self) -> Report {
        let n = self.dim();
        let mut check = Check::new("multiplicative");
        let images: Vec<GradedVector> = (0..n).map(|i| self.alpha_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_alpha(self.bracket_basis(i, j));
                let rhs = self.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    check.fail(vec![i, j], format!("alpha[e{i},e{j}] = {lhs} but [alpha e{i}, alpha e{j}] = {rhs}"));
                }
            }
        }
        let mut report = Report::default();
        report.push(check);
        report
    }

    /// Grading, skew symmetry and hom-Jacobi.
    pub fn validate(&self) -> Report {
        let mut report = self.eps.validate();
        report.checks.extend(self.check_grading().checks);
        let skew = self.check_skew();
        let skew_ok = skew.passed();
        report.checks.extend(skew.checks);
        if skew_ok {
            report.checks.extend(self.check_hom_jacobi().checks);
        } else {
            report.push(self.check_hom_jacobi_scan(true).checks.remove(0));
        }
        report
    }

    /// α invertible and multiplicative.
    pub fn is_regular(&self) -> bool {
        self.alpha.determinant() != Q::zero() && self.check_multiplicative().passed()
    }

    /// `[x, e_j] = 0` for all `j`; homogeneous basis, grouped by degree.
    pub fn center(&self) -> Vec<GradedVector> {
        self.center_filtered(false)
    }

    /// Center intersected with `ker(α - id)`.
    pub fn fixed_center(&self) -> Vec<GradedVector> {
        self.center_filtered(true)
    }

    fn center_filtered(&self, fixed: bool) -> Vec<GradedVector> {
        let n = self.dim();
        let mut out = Vec::new();
        for d in self.distinct_degrees() {
            let block = self.indices_of_degree(&d);
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for j in 0..n {
                for r in 0..n {
                    let row: Vec<Q> = block.iter().map(|&i| self.bracket_basis(i, j).get(r)).collect();
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            if fixed {
                for r in 0..n {
                    let row: Vec<Q> = block
                        .iter()
                        .map(|&i| {
                            let mut v = self.alpha[(r, i)].clone();
                            if r == i {
                                v -= one();
                            }
                            v
                        })
                        .collect();
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let kernel = if rows.is_empty() {
                (0..block.len()).map(|t| crate::linalg::unit(block.len(), t)).collect()
            } else {
                Matrix::from_rows(rows).kernel()
            };
            for k in kernel {
                out.push(GradedVector::from_terms(block.iter().copied().zip(k)));
            }
        }
        out
    }

    /// Checks that `beta` is a degree-zero morphism of the bracket:
    /// `β[e_i,e_j] = [β e_i, β e_j]`.
    pub fn check_morphism(&self, beta: &Matrix) -> Result<()> {
        let n = self.dim();
        check_alpha_shape(beta, n)?;
        for r in 0..n {
            for c in 0..n {
                if !beta[(r, c)].is_zero() && self.degree(r) != self.degree(c) {
                    return Err(Error::Precondition(format!(
                        "beta maps e{c} onto e{r} of a different degree"
                    )));
                }
            }
        }
        let images: Vec<GradedVector> = (0..n).map(|i| GradedVector::from_dense(&beta.column(i))).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = GradedVector::apply(beta, self.bracket_basis(i, j));
                let rhs = self.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "beta is not a morphism on pair ({i}, {j}): beta[e{i},e{j}] = {lhs}, [beta e{i}, beta e{j}] = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `(g, β∘[,], ε, β)` for a color Lie algebra `g` and a morphism `β`.
    pub fn yau_twist(&self, beta: &Matrix) -> Result<Self> {
        let color = self.check_color_jacobi();
        if let Some(v) = color.checks[0].violations.first() {
            return Err(Error::Precondition(format!(
                "not a color Lie algebra: generalized Jacobi fails at {:?}",
                v.location
            )));
        }
        self.check_morphism(beta)?;
        let table = self.table.iter().map(|v| GradedVector::apply(beta, v)).collect();
        Ok(ColorHomLieAlgebra {
            eps: self.eps.clone(),
            basis: self.basis.clone(),
            table,
            alpha: beta.clone(),
        })
    }

    /// Same bracket, α replaced by the identity.
    pub fn untwisted(&self) -> Self {
        let mut a = self.clone();
        a.alpha = Matrix::identity(self.dim());
        a
    }

    pub fn alpha_is_identity(&self) -> bool {
        self.alpha.is_identity()
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// True iff `ε(x,x) = -1` for basis element `i`.
    pub fn is_odd(&self, i: usize) -> bool {
        self.eps.is_odd(self.degree(i))
    }

    /// `true` when `x` is fixed by α.
    pub fn is_alpha_fixed(&self, x: &GradedVector) -> bool {
        self.apply_alpha(x) == *x
    }

    pub fn matrix_is_degree(&self, m: &Matrix, d: &Degree) -> bool {
        (0..m.rows()).all(|r| {
            (0..m.cols()).all(|c| {
                m[(r, c)].is_zero()
                    || *self.degree(r) == self.group().add(self.degree(c), d).expect("same group")
            })
        })
    }
}

/// `m: src → dst` is degree zero, preserves brackets and intertwines α.
pub fn check_homomorphism(src: &ColorHomLieAlgebra, dst: &ColorHomLieAlgebra, m: &Matrix, name: &str) -> Report {
    let mut report = Report::default();
    let mut shape = Check::new(format!("{name}.shape"));
    if m.rows() != dst.dim() || m.cols() != src.dim() {
        shape.fail(Vec::new(), format!("expected {}x{}, found {}x{}", dst.dim(), src.dim(), m.rows(), m.cols()));
        report.push(shape);
        return report;
    }
    report.push(shape);
    let mut degree = Check::new(format!("{name}.degree_zero"));
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() && dst.degree(r) != src.degree(c) {
                degree.fail(vec![r, c], format!("entry ({r},{c}) joins degrees {} and {}", src.degree(c), dst.degree(r)));
            }
        }
    }
    report.push(degree);
    let images: Vec<GradedVector> = (0..src.dim()).map(|i| GradedVector::from_dense(&m.column(i))).collect();
    let mut bracket = Check::new(format!("{name}.bracket"));
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = GradedVector::apply(m, src.bracket_basis(i, j));
            let rhs = dst.bracket(&images[i], &images[j]);
            if lhs != rhs {
                bracket.fail(vec![i, j], format!("image of [e{i},e{j}] is {lhs}, bracket of images is {rhs}"));
            }
        }
    }
    report.push(bracket);
    let mut alpha = Check::new(format!("{name}.alpha"));
    let diff = m.mul(src.alpha()).sub(&dst.alpha().mul(m));
    for r in 0..diff.rows() {
        for c in 0..diff.cols() {
            if !diff[(r, c)].is_zero() {
                alpha.fail(vec![r, c], format!("(f alpha - alpha f)[{r},{c}] = {}", diff[(r, c)]));
            }
        }
    }
    report.push(alpha);
    report
}

fn check_basis(eps: &CommutationFactor, basis: &[BasisElement]) -> Result<()> {
    let mut names = HashSet::new();
    for (i, b) in basis.iter().enumerate() {
        if b.degree.len() != eps.group().rank() {
            return Err(Error::structural(format!(
                "basis element {i} ({}) has a degree of length {}, group rank is {}",
                b.name,
                b.degree.len(),
                eps.group().rank()
            )));
        }
        if !names.insert(b.name.as_str()) {
            return Err(Error::structural(format!("duplicate basis name {}", b.name)));
        }
    }
    Ok(())
}

fn check_alpha_shape(alpha: &Matrix, n: usize) -> Result<()> {
    if alpha.rows() != n || alpha.cols() != n {
        return Err(Error::structural(format!(
            "alpha is {}x{}, expected {n}x{n}",
            alpha.rows(),
            alpha.cols()
        )));
    }
    Ok(())
}

/// Identity check used by several tests: `x` equals `y` coefficientwise.
pub fn vectors_equal(x: &GradedVector, y: &GradedVector) -> bool {
    x == y
}

/// `true` if `v` has only unit coefficient on index `i`.
pub fn is_basis_vector(v: &GradedVector, i: usize) -> bool {
    v.iter().count() == 1 && v.get(i).is_one()
}
