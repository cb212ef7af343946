//! Grading groups `Z^r ⊕ Z_{m1} ⊕ … ⊕ Z_{ms}`, their elements, and
//! commutation factors given by a table of values on generator pairs.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::{is_pm_one, one, pow, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Element of a grading group. Torsion coordinates are kept in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(Vec<i64>);

impl Degree {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::structural(format!("torsion order {m} must be at least 2")));
        }
        Ok(GradingGroup { free_rank, torsion })
    }

    /// The trivial group, for ungraded hom-Lie algebras.
    pub fn trivial() -> Self {
        GradingGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn z2() -> Self {
        GradingGroup {
            free_rank: 0,
            torsion: vec![2],
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of generators `r + s`.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of generator `i` (`None` for free generators).
    pub fn generator_order(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    pub fn zero(&self) -> Degree {
        Degree(vec![0; self.rank()])
    }

    pub fn degree(&self, coords: &[i64]) -> Result<Degree> {
        if coords.len() != self.rank() {
            return Err(Error::structural(format!(
                "degree has {} coordinates, group needs {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(self.reduce(coords.to_vec()))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> Degree {
        for (t, m) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.free_rank + t];
            *c = c.rem_euclid(*m as i64);
        }
        Degree(coords)
    }

    fn check(&self, d: &Degree) -> Result<()> {
        if d.len() != self.rank() {
            return Err(Error::structural(format!(
                "degree {d} does not belong to a group of rank {}",
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn neg(&self, a: &Degree) -> Result<Degree> {
        self.check(a)?;
        Ok(self.reduce(a.0.iter().map(|x| -x).collect()))
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Sum of a list of degrees; the empty sum is zero.
    pub fn sum<'a>(&self, degrees: impl IntoIterator<Item = &'a Degree>) -> Degree {
        let mut acc = self.zero();
        for d in degrees {
            acc = self.add(&acc, d).expect("degree from another group");
        }
        acc
    }

    /// All elements with free coordinates in `[-bound, bound]` and every torsion value.
    pub fn box_elements(&self, bound: i64) -> Vec<Degree> {
        let mut ranges: Vec<Vec<i64>> = Vec::with_capacity(self.rank());
        for _ in 0..self.free_rank {
            ranges.push((-bound..=bound).collect());
        }
        for &m in &self.torsion {
            ranges.push((0..m as i64).collect());
        }
        let mut out = vec![Vec::new()];
        for r in ranges {
            let mut next = Vec::with_capacity(out.len() * r.len());
            for prefix in &out {
                for &v in &r {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(Degree).collect()
    }
}

/// `ε: Γ×Γ → Q\{0}` determined by its values on generator pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutationFactor {
    group: GradingGroup,
    table: Vec<Vec<Q>>,
}

impl CommutationFactor {
    /// Shape and nonvanishing are enforced here; the bicharacter laws are
    /// reported by [`CommutationFactor::validate`].
    pub fn new(group: GradingGroup, table: Vec<Vec<Q>>) -> Result<Self> {
        let n = group.rank();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::structural(format!(
                "commutation factor table must be {n}x{n}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::Epsilon(format!("entry ({i},{j}) is zero")));
                }
            }
        }
        Ok(CommutationFactor { group, table })
    }

    /// `ε ≡ 1` on the trivial group.
    pub fn trivial() -> Self {
        CommutationFactor {
            group: GradingGroup::trivial(),
            table: Vec::new(),
        }
    }

    /// The Lie superalgebra sign `(-1)^{ab}` on `Z_2`.
    pub fn super_sign() -> Self {
        CommutationFactor {
            group: GradingGroup::z2(),
            table: vec![vec![-one()]],
        }
    }

    /// `(-1)^{a1 b2 + a2 b1}` on `Z_2 × Z_2`.
    pub fn klein_color() -> Self {
        CommutationFactor {
            group: GradingGroup::new(0, vec![2, 2]).unwrap(),
            table: vec![vec![one(), -one()], vec![-one(), one()]],
        }
    }

    /// Requires validity of `self` for the torsion generators involved.
    pub fn validated(group: GradingGroup, table: Vec<Vec<Q>>) -> Result<Self> {
        let eps = Self::new(group, table)?;
        let report = eps.validate();
        if !report.passed() {
            return Err(Error::Epsilon(report.to_string().trim().to_string()));
        }
        Ok(eps)
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn table(&self) -> &[Vec<Q>] {
        &self.table
    }

    /// `∏_{i,j} table[i][j]^{a_i b_j}`.
    pub fn eval(&self, a: &Degree, b: &Degree) -> Q {
        assert_eq!(a.len(), self.group.rank(), "degree rank mismatch");
        assert_eq!(b.len(), self.group.rank(), "degree rank mismatch");
        let mut acc = one();
        for (i, &ai) in a.coords().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords().iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let t = &self.table[i][j];
                if !t.is_one() {
                    acc *= pow(t, ai * bj);
                }
            }
        }
        acc
    }

    pub fn try_eval(&self, a: &Degree, b: &Degree) -> Result<Q> {
        self.group.check(a)?;
        self.group.check(b)?;
        Ok(self.eval(a, b))
    }

    /// Generator-level checks of the commutation factor axioms.
    pub fn validate(&self) -> Report {
        let n = self.group.rank();
        let mut reciprocity = Check::new("epsilon.reciprocity");
        let mut torsion = Check::new("epsilon.torsion_compatibility");
        let mut diagonal = Check::new("epsilon.diagonal_sign");
        for i in 0..n {
            for j in 0..n {
                let prod = &self.table[i][j] * &self.table[j][i];
                if !prod.is_one() {
                    reciprocity.fail(
                        vec![i, j],
                        format!("eps(g{i},g{j})*eps(g{j},g{i}) = {prod}, expected 1"),
                    );
                }
            }
            if !is_pm_one(&self.table[i][i]) {
                diagonal.fail(vec![i, i], format!("eps(g{i},g{i}) = {}", self.table[i][i]));
            }
            if let Some(m) = self.group.generator_order(i) {
                for j in 0..n {
                    for (a, b) in [(i, j), (j, i)] {
                        let v = pow(&self.table[a][b], m as i64);
                        if !v.is_one() {
                            torsion.fail(
                                vec![a, b],
                                format!("eps(g{a},g{b})^{m} = {v}, expected 1"),
                            );
                        }
                    }
                }
            }
        }
        let bilinear = Check::new("epsilon.biadditivity")
            .with_note("structurally guaranteed: values are derived by biadditivity");
        let mut report = Report::default();
        report.push(reciprocity);
        report.push(torsion);
        report.push(diagonal);
        report.push(bilinear);
        report
    }

    /// Value on a degree with itself, `±1` for valid factors.
    pub fn self_sign(&self, a: &Degree) -> Q {
        self.eval(a, a)
    }

    pub fn is_odd(&self, a: &Degree) -> bool {
        self.self_sign(a) == -q(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn degree_addition() {
        let z2 = GradingGroup::z2();
        let one_ = z2.degree(&[1]).unwrap();
        assert_eq!(z2.add(&one_, &one_).unwrap(), z2.zero());

        let z = GradingGroup::new(1, vec![]).unwrap();
        let s = z.add(&z.degree(&[2]).unwrap(), &z.degree(&[3]).unwrap()).unwrap();
        assert_eq!(s.coords(), &[5]);

        let zz3 = GradingGroup::new(1, vec![3]).unwrap();
        let s = zz3
            .add(&zz3.degree(&[1, 2]).unwrap(), &zz3.degree(&[0, 2]).unwrap())
            .unwrap();
        assert_eq!(s.coords(), &[1, 1]);
        assert_eq!(zz3.degree(&[0, -1]).unwrap().coords(), &[0, 2]);
    }

    #[test]
    fn mismatched_shapes_are_structural_errors() {
        let z2 = GradingGroup::z2();
        let z = GradingGroup::new(1, vec![]).unwrap();
        let a = z2.degree(&[1]).unwrap();
        let b = GradingGroup::new(2, vec![]).unwrap().degree(&[0, 1]).unwrap();
        assert!(matches!(z2.add(&a, &b), Err(Error::Structural(_))));
        assert!(z.degree(&[1, 2]).is_err());
        assert!(GradingGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn epsilon_examples() {
        let s = CommutationFactor::super_sign();
        let odd = s.group().degree(&[1]).unwrap();
        assert_eq!(s.eval(&odd, &odd), -q(1));
        assert_eq!(s.eval(&s.group().zero(), &odd), q(1));

        let g = GradingGroup::new(2, vec![]).unwrap();
        let e = CommutationFactor::new(g.clone(), vec![vec![q(1), q(2)], vec![qf(1, 2), q(1)]]).unwrap();
        let a = g.degree(&[1, 0]).unwrap();
        let b = g.degree(&[0, 1]).unwrap();
        assert_eq!(e.eval(&a, &b), q(2));
        assert_eq!(e.eval(&b, &a), qf(1, 2));
        assert!(e.validate().passed());
    }

    #[test]
    fn epsilon_validation() {
        assert!(CommutationFactor::super_sign().validate().passed());

        let z = GradingGroup::new(1, vec![]).unwrap();
        let bad = CommutationFactor::new(z, vec![vec![q(2)]]).unwrap();
        let rep = bad.validate();
        assert!(!rep.get("epsilon.reciprocity").unwrap().passed());
        assert!(!rep.passed());

        let klein = CommutationFactor::klein_color();
        assert!(klein.validate().passed());
        // brute force every property over all 16 pairs (and triples for biadditivity)
        let elems = klein.group().box_elements(0);
        assert_eq!(elems.len(), 4);
        for a in &elems {
            assert!(is_pm_one(&klein.eval(a, a)));
            for b in &elems {
                assert_eq!(klein.eval(a, b) * klein.eval(b, a), q(1));
                for c in &elems {
                    let ab = klein.group().add(a, b).unwrap();
                    assert_eq!(klein.eval(&ab, c), klein.eval(a, c) * klein.eval(b, c));
                    let bc = klein.group().add(b, c).unwrap();
                    assert_eq!(klein.eval(a, &bc), klein.eval(a, b) * klein.eval(a, c));
                }
            }
        }

        // torsion compatibility: eps(g,g) = -1 on Z_3 is not well defined
        let z3 = GradingGroup::new(0, vec![3]).unwrap();
        let e = CommutationFactor::new(z3, vec![vec![-q(1)]]).unwrap();
        assert!(!e.validate().get("epsilon.torsion_compatibility").unwrap().passed());
    }
}
