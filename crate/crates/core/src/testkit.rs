//! Fixtures, seeded generators and deliberately naive oracles.
//!
//! Nothing in the production modules calls into this one; the `generate`
//! subcommand and the test suites do.

pub mod fixtures {
    use crate::algebra::{BasisElement, ColorHomLieAlgebra, GradedVector};
    use crate::grading::{CommutationFactor, GradingGroup};
    use crate::linalg::Matrix;
    use crate::scalar::{q, qf, Q};

    pub(crate) fn build(
        eps: CommutationFactor,
        basis: &[(&str, &[i64])],
        brackets: &[(usize, usize, &[(usize, Q)])],
    ) -> ColorHomLieAlgebra {
        let basis: Vec<BasisElement> = basis
            .iter()
            .map(|(n, d)| BasisElement::new(*n, eps.group().degree(d).unwrap()))
            .collect();
        let n = basis.len();
        let brackets: Vec<(usize, usize, GradedVector)> = brackets
            .iter()
            .map(|(i, j, v)| (*i, *j, GradedVector::from_terms(v.iter().cloned())))
            .collect();
        ColorHomLieAlgebra::from_brackets(eps, basis, &brackets, Matrix::identity(n)).unwrap()
    }

    /// ℚⁿ with zero bracket, trivial grading.
    pub fn abelian(n: usize) -> ColorHomLieAlgebra {
        let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let basis: Vec<(&str, &[i64])> = names.iter().map(|s| (s.as_str(), &[][..])).collect();
        build(CommutationFactor::trivial(), &basis, &[])
    }

    /// Abelian superalgebra with `even` even and `odd` odd basis vectors.
    pub fn super_abelian(even: usize, odd: usize) -> ColorHomLieAlgebra {
        let names: Vec<String> = (1..=even + odd).map(|i| format!("e{i}")).collect();
        let basis: Vec<(&str, &[i64])> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), if i < even { &[0][..] } else { &[1][..] }))
            .collect();
        build(CommutationFactor::super_sign(), &basis, &[])
    }

    /// `[e1,e2] = e3`.
    pub fn heisenberg() -> ColorHomLieAlgebra {
        build(
            CommutationFactor::trivial(),
            &[("e1", &[]), ("e2", &[]), ("e3", &[])],
            &[(0, 1, &[(2, q(1))])],
        )
    }

    /// Basis `(h, e, f)`.
    pub fn sl2() -> ColorHomLieAlgebra {
        build(
            CommutationFactor::trivial(),
            &[("h", &[]), ("e", &[]), ("f", &[])],
            &[(0, 1, &[(1, q(2))]), (0, 2, &[(2, q(-2))]), (1, 2, &[(0, q(1))])],
        )
    }

    /// Superalgebra of dimension 2|1: even `h, z`, odd `f`,
    /// `[h,f] = f`, `[h,z] = 2z`, `[f,f] = z`.
    pub fn super_2_1() -> ColorHomLieAlgebra {
        build(
            CommutationFactor::super_sign(),
            &[("h", &[0]), ("f", &[1]), ("z", &[0])],
            &[(0, 1, &[(1, q(1))]), (0, 2, &[(2, q(2))]), (1, 1, &[(2, q(1))])],
        )
    }

    /// ℤ₂×ℤ₂ color algebra, `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
    pub fn klein_color_algebra() -> ColorHomLieAlgebra {
        build(
            CommutationFactor::klein_color(),
            &[("e1", &[1, 0]), ("e2", &[0, 1]), ("e3", &[1, 1])],
            &[(0, 1, &[(2, q(1))]), (1, 2, &[(0, q(1))]), (2, 0, &[(1, q(1))])],
        )
    }

    /// `ℤ⊕ℤ₂` with generator table `[[1,-1],[-1,-1]]`: `x` of degree (1,0),
    /// `y` of degree (-1,1), `z` of degree (0,1), `[x,y] = z`.
    pub fn z_z2_heisenberg() -> ColorHomLieAlgebra {
        let group = GradingGroup::new(1, vec![2]).unwrap();
        let eps = CommutationFactor::validated(group, vec![vec![q(1), q(-1)], vec![q(-1), q(-1)]]).unwrap();
        build(eps, &[("x", &[1, 0]), ("y", &[-1, 1]), ("z", &[0, 1])], &[(0, 1, &[(2, q(1))])])
    }

    /// ℤ² with table `[[1,2],[1/2,1]]`, so ε takes values outside ±1.
    pub fn z2_scaled_heisenberg() -> ColorHomLieAlgebra {
        let group = GradingGroup::new(2, vec![]).unwrap();
        let eps = CommutationFactor::validated(group, vec![vec![q(1), q(2)], vec![qf(1, 2), q(1)]]).unwrap();
        build(eps, &[("x", &[1, 0]), ("y", &[0, 1]), ("z", &[1, 1])], &[(0, 1, &[(2, q(1))])])
    }

    /// Yau twist of sl(2) by `diag(1, 2, 1/2)`.
    pub fn sl2_scaled_twist() -> ColorHomLieAlgebra {
        sl2().yau_twist(&Matrix::diagonal(&[q(1), q(2), qf(1, 2)])).unwrap()
    }

    /// Chevalley involution `h ↦ -h, e ↦ -f, f ↦ -e`, a non-diagonal morphism.
    pub fn chevalley_involution() -> Matrix {
        Matrix::from_rows(vec![
            vec![q(-1), q(0), q(0)],
            vec![q(0), q(0), q(-1)],
            vec![q(0), q(-1), q(0)],
        ])
    }

    pub fn sl2_chevalley_twist() -> ColorHomLieAlgebra {
        sl2().yau_twist(&chevalley_involution()).unwrap()
    }

    /// A diagonal morphism for each nonabelian fixture, used for Yau twists.
    pub fn twist_morphism(name: &str) -> Option<Matrix> {
        let d = |v: &[Q]| Matrix::diagonal(v);
        Some(match name {
            "heisenberg" => d(&[q(2), q(3), q(6)]),
            "sl2" => d(&[q(1), q(2), qf(1, 2)]),
            "super_2_1" => d(&[q(1), q(3), q(9)]),
            "klein" => d(&[q(-1), q(-1), q(1)]),
            "z_z2_heisenberg" => d(&[q(2), qf(1, 3), qf(2, 3)]),
            "z2_scaled_heisenberg" => d(&[q(-1), q(5), q(-5)]),
            _ => return None,
        })
    }

    /// Named fixture corpus: the untwisted algebras and the Yau twist of each.
    pub fn corpus() -> Vec<(String, ColorHomLieAlgebra)> {
        let base: Vec<(&str, ColorHomLieAlgebra)> = vec![
            ("abelian1", abelian(1)),
            ("abelian2", abelian(2)),
            ("abelian3", abelian(3)),
            ("super_abelian_1_1", super_abelian(1, 1)),
            ("heisenberg", heisenberg()),
            ("sl2", sl2()),
            ("super_2_1", super_2_1()),
            ("klein", klein_color_algebra()),
            ("z_z2_heisenberg", z_z2_heisenberg()),
            ("z2_scaled_heisenberg", z2_scaled_heisenberg()),
        ];
        let mut out = Vec::new();
        for (name, a) in base {
            let beta = twist_morphism(name).unwrap_or_else(|| {
                let n = a.dim();
                Matrix::diagonal(&(0..n).map(|i| q(i as i64 + 2)).collect::<Vec<_>>())
            });
            let twisted = a.yau_twist(&beta).expect("fixture morphism");
            out.push((name.to_string(), a));
            out.push((format!("{name}_twisted"), twisted));
        }
        out.push(("sl2_chevalley_twisted".into(), sl2_chevalley_twist()));
        out
    }
}

pub mod gen {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::fixtures;
    use crate::algebra::{BasisElement, ColorHomLieAlgebra, GradedVector};
    use crate::cochains::{cochain_basis, from_coords, GradedCochain};
    use crate::grading::{CommutationFactor, Degree, GradingGroup};
    use crate::linalg::Matrix;
    use crate::scalar::{q, qf, Q};

    pub type TestRng = ChaCha8Rng;

    pub fn rng(seed: u64) -> TestRng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum GradingChoice {
        Trivial,
        Super,
        Klein,
        ZZ2,
        Z2Scaled,
    }

    impl GradingChoice {
        pub const ALL: [GradingChoice; 5] = [
            GradingChoice::Trivial,
            GradingChoice::Super,
            GradingChoice::Klein,
            GradingChoice::ZZ2,
            GradingChoice::Z2Scaled,
        ];

        pub fn eps(self) -> CommutationFactor {
            match self {
                GradingChoice::Trivial => CommutationFactor::trivial(),
                GradingChoice::Super => CommutationFactor::super_sign(),
                GradingChoice::Klein => CommutationFactor::klein_color(),
                GradingChoice::ZZ2 => CommutationFactor::new(
                    GradingGroup::new(1, vec![2]).unwrap(),
                    vec![vec![q(1), q(-1)], vec![q(-1), q(-1)]],
                )
                .unwrap(),
                GradingChoice::Z2Scaled => CommutationFactor::new(
                    GradingGroup::new(2, vec![]).unwrap(),
                    vec![vec![q(1), q(2)], vec![qf(1, 2), q(1)]],
                )
                .unwrap(),
            }
        }

        /// Small pool of degrees to draw basis elements from.
        pub fn pool(self) -> Vec<Vec<i64>> {
            match self {
                GradingChoice::Trivial => vec![vec![]],
                GradingChoice::Super => vec![vec![0], vec![1]],
                GradingChoice::Klein => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
                GradingChoice::ZZ2 => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, 1], vec![1, 1]],
                GradingChoice::Z2Scaled => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0]],
            }
        }
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum AlphaFamily {
        Identity,
        Diagonal,
        Morphism,
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Family {
        Abelian,
        NilpotentByCocycle,
        Classical,
        YauTwist,
    }

    #[derive(Clone, Debug)]
    pub struct GeneratorConfig {
        pub seed: u64,
        pub max_dim: usize,
        pub grading: GradingChoice,
        pub alpha: AlphaFamily,
        pub family: Family,
    }

    impl GeneratorConfig {
        pub fn new(seed: u64, family: Family, grading: GradingChoice, alpha: AlphaFamily) -> Self {
            GeneratorConfig {
                seed,
                max_dim: 6,
                grading,
                alpha,
                family,
            }
        }
    }

    /// Small nonzero rational.
    pub fn small_nonzero(rng: &mut TestRng) -> Q {
        let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        let d = *[1i64, 1, 1, 2].choose(rng).unwrap();
        qf(n, d)
    }

    /// Small rational, zero with probability about one third.
    pub fn small(rng: &mut TestRng) -> Q {
        if rng.gen_range(0..3) == 0 {
            q(0)
        } else {
            small_nonzero(rng)
        }
    }

    fn degrees(eps: &CommutationFactor, coords: &[Vec<i64>]) -> Vec<BasisElement> {
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| BasisElement::new(format!("e{}", i + 1), eps.group().degree(c).unwrap()))
            .collect()
    }

    /// Random invertible degree-preserving matrix (block lower-unitriangular
    /// times a nonzero diagonal).
    pub fn random_degree_zero_invertible(rng: &mut TestRng, degs: &[Degree]) -> Matrix {
        let n = degs.len();
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            m[(r, r)] = small_nonzero(rng);
            for c in 0..r {
                if degs[r] == degs[c] {
                    m[(r, c)] = small(rng);
                }
            }
        }
        m
    }

    pub fn random_degree_zero(rng: &mut TestRng, rows: &[Degree], cols: &[Degree]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (r, dr) in rows.iter().enumerate() {
            for (c, dc) in cols.iter().enumerate() {
                if dr == dc {
                    m[(r, c)] = small(rng);
                }
            }
        }
        m
    }

    fn abelian_random(rng: &mut TestRng, cfg: &GeneratorConfig) -> ColorHomLieAlgebra {
        let eps = cfg.grading.eps();
        let pool = cfg.grading.pool();
        let n = rng.gen_range(1..=cfg.max_dim.clamp(1, 4));
        let coords: Vec<Vec<i64>> = (0..n).map(|_| pool.choose(rng).unwrap().clone()).collect();
        let basis = degrees(&eps, &coords);
        let degs: Vec<Degree> = basis.iter().map(|b| b.degree.clone()).collect();
        let alpha = match cfg.alpha {
            AlphaFamily::Identity => Matrix::identity(n),
            AlphaFamily::Diagonal => Matrix::diagonal(&(0..n).map(|_| small_nonzero(rng)).collect::<Vec<_>>()),
            AlphaFamily::Morphism => random_degree_zero_invertible(rng, &degs),
        };
        ColorHomLieAlgebra::abelian(eps, basis, alpha).unwrap()
    }

    /// Central extension of an abelian `g` by an abelian `h` through a random
    /// skew form: `[x_i, x_j] = Σ c_t` over central elements tied to `(i, j)`.
    fn nilpotent_random(rng: &mut TestRng, cfg: &GeneratorConfig) -> ColorHomLieAlgebra {
        let eps = cfg.grading.eps();
        let group = eps.group().clone();
        let pool = cfg.grading.pool();
        let a = rng.gen_range(2..=3.min(cfg.max_dim.max(3) - 1));
        let coords: Vec<Vec<i64>> = (0..a).map(|_| pool.choose(rng).unwrap().clone()).collect();
        let gdeg: Vec<Degree> = coords.iter().map(|c| group.degree(c).unwrap()).collect();
        let mut pairs = Vec::new();
        for i in 0..a {
            for j in i..a {
                if i < j || eps.is_odd(&gdeg[i]) {
                    pairs.push((i, j));
                }
            }
        }
        pairs.shuffle(rng);
        let b = rng.gen_range(1..=pairs.len().min(cfg.max_dim - a).max(1));
        let tied: Vec<(usize, usize)> = pairs[..b.min(pairs.len())].to_vec();
        let mut basis: Vec<BasisElement> = degrees(&eps, &coords);
        for (t, &(i, j)) in tied.iter().enumerate() {
            basis.push(BasisElement::new(format!("c{}", t + 1), group.add(&gdeg[i], &gdeg[j]).unwrap()));
        }
        let n = basis.len();
        let mut brackets: Vec<(usize, usize, GradedVector)> = Vec::new();
        for (t, &(i, j)) in tied.iter().enumerate() {
            brackets.push((i, j, GradedVector::term(a + t, small_nonzero(rng))));
        }
        let diag: Vec<Q> = (0..a).map(|_| small_nonzero(rng)).collect();
        let alpha = match cfg.alpha {
            AlphaFamily::Identity => Matrix::identity(n),
            _ => {
                let mut d = diag.clone();
                for &(i, j) in &tied {
                    d.push(&diag[i] * &diag[j]);
                }
                Matrix::diagonal(&d)
            }
        };
        ColorHomLieAlgebra::from_brackets(eps, basis, &brackets, alpha).unwrap()
    }

    fn random_morphism(rng: &mut TestRng, name: &str, alpha: AlphaFamily) -> Matrix {
        let t = small_nonzero(rng);
        let s = small_nonzero(rng);
        match (name, alpha) {
            (_, AlphaFamily::Identity) => Matrix::identity(3),
            ("sl2", AlphaFamily::Diagonal) => Matrix::diagonal(&[q(1), t.clone(), q(1) / t]),
            ("sl2", _) => fixtures::chevalley_involution().mul(&Matrix::diagonal(&[q(1), t.clone(), q(1) / t])),
            ("heisenberg", AlphaFamily::Diagonal) => Matrix::diagonal(&[t.clone(), s.clone(), t * s]),
            ("heisenberg", _) => {
                let u = small(rng);
                let v = small(rng);
                let mut m = Matrix::zeros(3, 3);
                m[(0, 0)] = t.clone();
                m[(0, 1)] = u.clone();
                m[(1, 0)] = v.clone();
                m[(1, 1)] = s.clone();
                let det = &t * &s - &u * &v;
                if det == q(0) {
                    return Matrix::diagonal(&[t.clone(), s.clone(), t * s]);
                }
                m[(2, 2)] = det;
                m
            }
            ("super_2_1", _) => Matrix::diagonal(&[q(1), t.clone(), &t * &t]),
            ("klein", _) => {
                let signs = [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]];
                let c = signs.choose(rng).unwrap();
                Matrix::diagonal(&[q(c[0]), q(c[1]), q(c[2])])
            }
            ("z_z2_heisenberg", _) | ("z2_scaled_heisenberg", _) => Matrix::diagonal(&[t.clone(), s.clone(), t * s]),
            _ => Matrix::identity(3),
        }
    }

    pub fn gen_algebra(cfg: &GeneratorConfig) -> ColorHomLieAlgebra {
        let mut rng = rng(cfg.seed);
        match cfg.family {
            Family::Abelian => abelian_random(&mut rng, cfg),
            Family::NilpotentByCocycle => nilpotent_random(&mut rng, cfg),
            Family::Classical => {
                let all = fixtures::corpus();
                all.choose(&mut rng).unwrap().1.clone()
            }
            Family::YauTwist => {
                let names = ["sl2", "heisenberg", "super_2_1", "klein", "z_z2_heisenberg", "z2_scaled_heisenberg"];
                let name = *names.choose(&mut rng).unwrap();
                let base = match name {
                    "sl2" => fixtures::sl2(),
                    "heisenberg" => fixtures::heisenberg(),
                    "super_2_1" => fixtures::super_2_1(),
                    "klein" => fixtures::klein_color_algebra(),
                    "z_z2_heisenberg" => fixtures::z_z2_heisenberg(),
                    _ => fixtures::z2_scaled_heisenberg(),
                };
                let beta = random_morphism(&mut rng, name, cfg.alpha);
                base.yau_twist(&beta).expect("generated morphism")
            }
        }
    }

    /// The families crossed with every grading and α choice, one config per seed.
    pub fn config_for(seed: u64) -> GeneratorConfig {
        let families = [Family::Abelian, Family::NilpotentByCocycle, Family::Classical, Family::YauTwist];
        let alphas = [AlphaFamily::Identity, AlphaFamily::Diagonal, AlphaFamily::Morphism];
        let family = families[(seed % 4) as usize];
        let grading = GradingChoice::ALL[((seed / 4) % 5) as usize];
        let alpha = alphas[((seed / 20) % 3) as usize];
        GeneratorConfig::new(seed, family, grading, alpha)
    }

    /// Random element of `A^{p,w}` with small coefficients.
    pub fn random_cochain(
        rng: &mut TestRng,
        g: &ColorHomLieAlgebra,
        target_degrees: &[Degree],
        p: usize,
        w: &Degree,
    ) -> GradedCochain {
        let basis = cochain_basis(g, target_degrees, p, w);
        let coords: Vec<Q> = basis.iter().map(|_| small(rng)).collect();
        from_coords(p, w, target_degrees.len(), &basis, &coords)
    }

    /// Weights for which a cochain space of arity `p` is nonzero, `0` first.
    pub fn interesting_weights(g: &ColorHomLieAlgebra, target_degrees: &[Degree], p: usize) -> Vec<Degree> {
        let mut out = vec![g.group().zero()];
        for t in crate::cochains::stored_tuples(g, p) {
            let s = g.group().sum(t.iter().map(|&i| g.degree(i)));
            for d in target_degrees {
                let w = g.group().sub(d, &s).unwrap();
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }
}

pub mod oracle {
    use std::collections::BTreeMap;

    use itertools::Itertools;
    use num_traits::Zero;

    use crate::algebra::{ColorHomLieAlgebra, GradedVector};
    use crate::cochains::{Connection, GradedCochain};
    use crate::grading::{CommutationFactor, Degree};
    use crate::linalg::{span_rank, Matrix};
    use crate::report::{Check, Report};
    use crate::scalar::{one, Q};

    /// Textbook Jacobi identity over a dense structure-constant array,
    /// every ordered triple.
    pub fn oracle_jacobi_classical(a: &ColorHomLieAlgebra) -> Report {
        let n = a.dim();
        let c: Vec<Vec<Vec<Q>>> = (0..n)
            .map(|i| (0..n).map(|j| a.bracket_basis(i, j).to_dense(n)).collect())
            .collect();
        let br = |u: &[Q], v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    if u[i].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        out[k] += &u[i] * &v[j] * &c[i][j][k];
                    }
                }
            }
            out
        };
        let e = |i: usize| crate::linalg::unit(n, i);
        let mut check = Check::new("classical_jacobi");
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t1 = br(&e(x), &br(&e(y), &e(z)));
                    let t2 = br(&e(y), &br(&e(z), &e(x)));
                    let t3 = br(&e(z), &br(&e(x), &e(y)));
                    if (0..n).any(|k| !(&t1[k] + &t2[k] + &t3[k]).is_zero()) {
                        check.fail(vec![x, y, z], "nonzero cyclic sum");
                    }
                }
            }
        }
        let mut r = Report::default();
        r.push(check);
        r
    }

    /// `ε_k(σ, a)` by bubble-sorting the arrangement `σ(a)` back to `a`;
    /// every adjacent swap of an out-of-order pair contributes one factor.
    pub fn oracle_inversions(eps: &CommutationFactor, sigma: &[usize], degrees: &[Degree]) -> Q {
        let mut arr = sigma.to_vec();
        let mut acc = one();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for m in 0..arr.len().saturating_sub(1) {
                if arr[m] > arr[m + 1] {
                    acc *= eps.eval(&degrees[arr[m + 1]], &degrees[arr[m]]);
                    arr.swap(m, m + 1);
                    swapped = true;
                }
            }
        }
        acc
    }

    /// Sign of a permutation by counting cycles.
    fn cycle_sign(sigma: &[usize]) -> Q {
        let mut seen = vec![false; sigma.len()];
        let mut s = one();
        for start in 0..sigma.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = sigma[c];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Every ordered tuple of a cochain, each reached from its stored
    /// representative through the bubble-sort oracle.
    pub fn full_table(g: &ColorHomLieAlgebra, psi: &GradedCochain) -> BTreeMap<Vec<usize>, GradedVector> {
        let n = g.dim();
        let mut out = BTreeMap::new();
        for t in (0..psi.p).map(|_| 0..n).multi_cartesian_product() {
            let mut order: Vec<usize> = (0..psi.p).collect();
            order.sort_by_key(|&m| (t[m], m));
            let sorted: Vec<usize> = order.iter().map(|&m| t[m]).collect();
            let even_repeat = sorted.windows(2).any(|w| w[0] == w[1] && !g.is_odd(w[0]));
            let v = if even_repeat {
                GradedVector::new()
            } else {
                let degs: Vec<Degree> = t.iter().map(|&i| g.degree(i).clone()).collect();
                let f = cycle_sign(&order) * oracle_inversions(g.eps(), &order, &degs);
                psi.stored(&sorted).scale(&f)
            };
            out.insert(t, v);
        }
        if psi.p == 0 {
            out.insert(Vec::new(), psi.stored(&[]));
        }
        out
    }

    fn eval_full(table: &BTreeMap<Vec<usize>, GradedVector>, args: &[Vec<Q>]) -> GradedVector {
        let mut out = GradedVector::new();
        if args.is_empty() {
            return table.get(&Vec::new()).cloned().unwrap_or_default();
        }
        let n = args[0].len();
        for t in (0..args.len()).map(|_| 0..n).multi_cartesian_product() {
            let mut coeff = one();
            for (m, &i) in t.iter().enumerate() {
                coeff *= &args[m][i];
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                out.add_scaled(&table[&t], &coeff);
            }
        }
        out
    }

    /// `δ_φ ψ` on every ordered `(p+1)`-tuple from a full table of `ψ`,
    /// using dense α columns and dense brackets.
    pub fn oracle_delta_full(phi: &Connection, table: &BTreeMap<Vec<usize>, GradedVector>, p: usize, w: &Degree) -> BTreeMap<Vec<usize>, GradedVector> {
        let g = &phi.source;
        let n = g.dim();
        let group = g.group();
        let mut out = BTreeMap::new();
        for x in (0..p + 1).map(|_| 0..n).multi_cartesian_product() {
            let mut v = GradedVector::new();
            for i in 0..=p {
                let mut before = w.clone();
                for &m in &x[..i] {
                    before = group.add(&before, g.degree(m)).unwrap();
                }
                let rest: Vec<usize> = x.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &y)| y).collect();
                let sign = if i % 2 == 0 { one() } else { -one() };
                let theta = g.eps().eval(&before, g.degree(x[i]));
                let inner = table[&rest].to_dense(phi.target_dim());
                let applied = GradedVector::from_dense(&phi.action[x[i]].mul_vec(&inner));
                v.add_scaled(&applied, &(sign * theta));
            }
            for i in 0..=p {
                for j in i + 1..=p {
                    let mut between = group.zero();
                    for &m in &x[i + 1..j] {
                        between = group.add(&between, g.degree(m)).unwrap();
                    }
                    let theta = g.eps().eval(&between, g.degree(x[j]));
                    let sign = if j % 2 == 0 { one() } else { -one() };
                    let mut args = Vec::new();
                    for m in 0..=p {
                        if m == i {
                            args.push(g.bracket_basis(x[i], x[j]).to_dense(n));
                        } else if m != j {
                            args.push(g.alpha().column(x[m]));
                        }
                    }
                    v.add_scaled(&eval_full(table, &args), &(sign * theta));
                }
            }
            out.insert(x, v);
        }
        out
    }

    /// Naive δ: full table in, stored-tuple cochain out.
    pub fn oracle_delta_naive(phi: &Connection, psi: &GradedCochain) -> GradedCochain {
        let g = &phi.source;
        let full = oracle_delta_full(phi, &full_table(g, psi), psi.p, &psi.weight);
        let mut out = GradedCochain::zero(psi.p + 1, psi.weight.clone(), psi.target_dim);
        for t in crate::cochains::stored_tuples(g, psi.p + 1) {
            out.set(t.clone(), full[&t].clone());
        }
        out
    }

    /// Index of the full space: every ordered tuple times every target index
    /// of the right degree.
    fn full_index(g: &ColorHomLieAlgebra, targets: &[Degree], p: usize, w: &Degree) -> Vec<(Vec<usize>, usize)> {
        let n = g.dim();
        let mut out = Vec::new();
        for t in (0..p).map(|_| 0..n).multi_cartesian_product() {
            let d = g.group().sum(t.iter().map(|&i| g.degree(i)));
            let d = g.group().add(&d, w).unwrap();
            for (r, td) in targets.iter().enumerate() {
                if *td == d {
                    out.push((t.clone(), r));
                }
            }
        }
        // Depending on the itertools version the empty product may or may not
        // yield the empty tuple.
        if p == 0 && out.is_empty() {
            for (r, td) in targets.iter().enumerate() {
                if td == w {
                    out.push((Vec::new(), r));
                }
            }
        }
        out
    }

    /// Kernel of the adjacent-swap relations on the full space.
    fn skew_subspace(g: &ColorHomLieAlgebra, index: &[(Vec<usize>, usize)]) -> Vec<Vec<Q>> {
        let pos: BTreeMap<&(Vec<usize>, usize), usize> = index.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rows = Vec::new();
        for (ix, (t, r)) in index.iter().enumerate() {
            for m in 0..t.len().saturating_sub(1) {
                let mut s = t.clone();
                s.swap(m, m + 1);
                let jx = pos[&(s, *r)];
                let mut row = vec![Q::zero(); index.len()];
                row[ix] += one();
                row[jx] += g.eps().eval(g.degree(t[m]), g.degree(t[m + 1]));
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return (0..index.len()).map(|i| crate::linalg::unit(index.len(), i)).collect();
        }
        Matrix::from_rows(rows).kernel()
    }

    fn apply_full(phi: &Connection, src: &[(Vec<usize>, usize)], dst: &[(Vec<usize>, usize)], p: usize, w: &Degree, v: &[Q]) -> Vec<Q> {
        let g = &phi.source;
        let n = g.dim();
        let mut table: BTreeMap<Vec<usize>, GradedVector> = (0..p)
            .map(|_| 0..n)
            .multi_cartesian_product()
            .map(|t| (t, GradedVector::new()))
            .collect();
        if p == 0 {
            table.insert(Vec::new(), GradedVector::new());
        }
        for ((t, r), c) in src.iter().zip(v) {
            table.get_mut(t).unwrap().add_term(*r, c);
        }
        let out = oracle_delta_full(phi, &table, p, w);
        dst.iter().map(|(t, r)| out[t].get(*r)).collect()
    }

    /// `dim H^p` by full enumeration: skew cochains cut out of all
    /// multilinear maps by swap relations, δ applied on full tables.
    pub fn oracle_cohomology_dim(phi: &Connection, p: usize, w: &Degree) -> usize {
        let g = &phi.source;
        let t = &phi.target_degrees;
        let cur = full_index(g, t, p, w);
        let next = full_index(g, t, p + 1, w);
        let skew = skew_subspace(g, &cur);
        let images: Vec<Vec<Q>> = skew.iter().map(|v| apply_full(phi, &cur, &next, p, w, v)).collect();
        let dim_z = skew.len() - span_rank(&images);
        let dim_b = if p == 0 {
            0
        } else {
            let prev = full_index(g, t, p - 1, w);
            let skew_prev = skew_subspace(g, &prev);
            let imgs: Vec<Vec<Q>> = skew_prev.iter().map(|v| apply_full(phi, &prev, &cur, p - 1, w, v)).collect();
            span_rank(&imgs)
        };
        dim_z - dim_b
    }
}

/// Seeded extension data in the regimes where the constructions are exact.
pub mod datagen {
    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::fixtures;
    use super::gen::{self, AlphaFamily, Family, GeneratorConfig, GradingChoice, TestRng};
    use crate::algebra::{BasisElement, ColorHomLieAlgebra, GradedVector};
    use crate::cochains::{cohomology_space, from_coords, Connection, GradedCochain};
    use crate::derivations::left_mult;
    use crate::extensions::{center_module, transform_data_by_b, ExtensionData};
    use crate::linalg::Matrix;
    use crate::scalar::Q;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Regime {
        /// α = id on both sides, any `h`, central curvature moved by a random `b`.
        ColorLie,
        /// α = id, `h` an abelian copy of `g` with the adjoint action.
        Adjoint,
        /// Twisted `g`, abelian `h`, `φ = 0`, `b` intertwining the twists.
        HomCentral,
        /// Twisted `g` and non-abelian twisted `h`, `φ = 0`, no shift.
        HomCentralNonabelian,
    }

    pub const REGIMES: [Regime; 4] = [
        Regime::ColorLie,
        Regime::Adjoint,
        Regime::HomCentral,
        Regime::HomCentralNonabelian,
    ];

    #[derive(Clone, Debug)]
    pub struct Generated {
        pub regime: Regime,
        pub data: ExtensionData,
        /// Degree-zero `b` usable for a shifted section or an equivalence.
        pub b: Matrix,
    }

    fn color_lie_fixtures(grading: GradingChoice) -> Vec<ColorHomLieAlgebra> {
        match grading {
            GradingChoice::Trivial => vec![
                fixtures::abelian(1),
                fixtures::abelian(2),
                fixtures::heisenberg(),
                fixtures::sl2(),
            ],
            GradingChoice::Super => vec![fixtures::super_abelian(1, 1), fixtures::super_2_1()],
            GradingChoice::Klein => vec![fixtures::klein_color_algebra()],
            GradingChoice::ZZ2 => vec![fixtures::z_z2_heisenberg()],
            GradingChoice::Z2Scaled => vec![fixtures::z2_scaled_heisenberg()],
        }
    }

    fn small_algebra(rng: &mut TestRng, grading: GradingChoice, alpha: AlphaFamily, max_dim: usize) -> ColorHomLieAlgebra {
        if rng.gen_bool(0.5) && alpha == AlphaFamily::Identity {
            return color_lie_fixtures(grading).choose(rng).unwrap().clone();
        }
        let family = if rng.gen_bool(0.5) { Family::Abelian } else { Family::NilpotentByCocycle };
        let mut cfg = GeneratorConfig::new(rng.gen(), family, grading, alpha);
        cfg.max_dim = max_dim;
        gen::gen_algebra(&cfg)
    }

    fn twisted_algebra(rng: &mut TestRng) -> ColorHomLieAlgebra {
        let alpha = *[AlphaFamily::Diagonal, AlphaFamily::Morphism].choose(rng).unwrap();
        let family = *[Family::YauTwist, Family::NilpotentByCocycle, Family::Abelian].choose(rng).unwrap();
        let grading = *GradingChoice::ALL.choose(rng).unwrap();
        let mut cfg = GeneratorConfig::new(rng.gen(), family, grading, alpha);
        cfg.max_dim = 4;
        gen::gen_algebra(&cfg)
    }

    fn random_combination(rng: &mut TestRng, vectors: &[Vec<Q>], len: usize) -> Vec<Q> {
        let mut out = vec![Q::from_integer(0.into()); len];
        for v in vectors {
            let c = gen::small(rng);
            for (o, x) in out.iter_mut().zip(v) {
                *o += &c * x;
            }
        }
        out
    }

    /// Random cocycle of arity 2 and weight zero for `conn`.
    pub fn random_cocycle(rng: &mut TestRng, conn: &Connection) -> GradedCochain {
        let zero = conn.source.group().zero();
        let space = cohomology_space(conn, 2, &zero).expect("flat connection");
        let coords = random_combination(rng, &space.cocycles, space.basis.len());
        from_coords(2, &zero, conn.target_dim(), &space.basis, &coords)
    }

    /// Random degree-zero `b: g → h` with `α_h b = b α_g`.
    pub fn random_compatible_b(rng: &mut TestRng, g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra) -> Matrix {
        let slots: Vec<(usize, usize)> = (0..h.dim())
            .flat_map(|r| (0..g.dim()).map(move |c| (r, c)))
            .filter(|&(r, c)| h.degree(r) == g.degree(c))
            .collect();
        if slots.is_empty() {
            return Matrix::zeros(h.dim(), g.dim());
        }
        let mut cols = Vec::with_capacity(slots.len());
        for &(r, c) in &slots {
            let mut e = Matrix::zeros(h.dim(), g.dim());
            e[(r, c)] = Q::from_integer(1.into());
            cols.push(h.alpha().mul(&e).sub(&e.mul(g.alpha())).entries().to_vec());
        }
        let system = Matrix::from_columns(h.dim() * g.dim(), &cols);
        let kernel = system.kernel();
        let coords = random_combination(rng, &kernel, slots.len());
        let mut b = Matrix::zeros(h.dim(), g.dim());
        for (t, &(r, c)) in slots.iter().enumerate() {
            b[(r, c)] = coords[t].clone();
        }
        b
    }

    /// Abelian `h` whose basis copies degrees and diagonal twist entries of `g`.
    fn abelian_shadow(rng: &mut TestRng, g: &ColorHomLieAlgebra) -> ColorHomLieAlgebra {
        let m = rng.gen_range(1..=2.min(g.dim()).max(1));
        let mut picks: Vec<usize> = (0..g.dim()).collect();
        picks.shuffle(rng);
        picks.truncate(m);
        let basis: Vec<BasisElement> = picks
            .iter()
            .enumerate()
            .map(|(t, &i)| BasisElement::new(format!("u{}", t + 1), g.degree(i).clone()))
            .collect();
        let diag: Vec<Q> = picks
            .iter()
            .map(|&i| {
                let v = g.alpha()[(i, i)].clone();
                if v == Q::from_integer(0.into()) || rng.gen_bool(0.2) {
                    gen::small_nonzero(rng)
                } else {
                    v
                }
            })
            .collect();
        ColorHomLieAlgebra::abelian(g.eps().clone(), basis, Matrix::diagonal(&diag)).unwrap()
    }

    fn central_cocycle(rng: &mut TestRng, g: &ColorHomLieAlgebra, h: &ColorHomLieAlgebra, k: i64) -> GradedCochain {
        let zero_phi = vec![Matrix::zeros(h.dim(), h.dim()); g.dim()];
        let zm = center_module(g, h, k, &zero_phi).expect("zero action preserves the center");
        if zm.dim() == 0 {
            return GradedCochain::zero(2, g.group().zero(), h.dim());
        }
        zm.lift(&random_cocycle(rng, &zm.connection))
    }

    pub fn generate(seed: u64) -> Generated {
        let regime = REGIMES[(seed % 4) as usize];
        generate_in(seed, regime)
    }

    pub fn generate_in(seed: u64, regime: Regime) -> Generated {
        let mut rng = gen::rng(seed.wrapping_mul(0x9e37_79b9).wrapping_add(17));
        let k = rng.gen_range(0..=2);
        match regime {
            Regime::ColorLie => {
                let grading = *GradingChoice::ALL.choose(&mut rng).unwrap();
                let g = small_algebra(&mut rng, grading, AlphaFamily::Identity, 4);
                let h = small_algebra(&mut rng, grading, AlphaFamily::Identity, 3);
                let rho = central_cocycle(&mut rng, &g, &h, k);
                let base = ExtensionData::new(g.clone(), h.clone(), k, vec![Matrix::zeros(h.dim(), h.dim()); g.dim()], rho).unwrap();
                let b = gen::random_degree_zero(&mut rng, &h.degrees(), &g.degrees());
                let data = transform_data_by_b(&base, &b).unwrap();
                let b2 = gen::random_degree_zero(&mut rng, &h.degrees(), &g.degrees());
                Generated { regime, data, b: b2 }
            }
            Regime::Adjoint => {
                let grading = *GradingChoice::ALL.choose(&mut rng).unwrap();
                let g = small_algebra(&mut rng, grading, AlphaFamily::Identity, 4);
                let basis: Vec<BasisElement> = g
                    .basis()
                    .iter()
                    .enumerate()
                    .map(|(i, b)| BasisElement::new(format!("v{}", i + 1), b.degree.clone()))
                    .collect();
                let h = ColorHomLieAlgebra::abelian(g.eps().clone(), basis, Matrix::identity(g.dim())).unwrap();
                let phi: Vec<Matrix> = (0..g.dim())
                    .map(|x| left_mult(&g, &GradedVector::basis(x), k - 1).unwrap())
                    .collect();
                let conn = Connection::module(&g, h.degrees(), k, phi.clone());
                let rho = random_cocycle(&mut rng, &conn);
                let data = ExtensionData::new(g.clone(), h.clone(), k, phi, rho).unwrap();
                let b = gen::random_degree_zero(&mut rng, &h.degrees(), &g.degrees());
                Generated { regime, data, b }
            }
            Regime::HomCentral => {
                let g = twisted_algebra(&mut rng);
                let h = abelian_shadow(&mut rng, &g);
                let rho = central_cocycle(&mut rng, &g, &h, k);
                let base = ExtensionData::new(g.clone(), h.clone(), k, vec![Matrix::zeros(h.dim(), h.dim()); g.dim()], rho).unwrap();
                let b = random_compatible_b(&mut rng, &g, &h);
                let data = transform_data_by_b(&base, &b).unwrap();
                let b2 = random_compatible_b(&mut rng, &g, &h);
                Generated { regime, data, b: b2 }
            }
            Regime::HomCentralNonabelian => {
                let g = twisted_algebra(&mut rng);
                let candidates: Vec<ColorHomLieAlgebra> = fixtures::corpus()
                    .into_iter()
                    .map(|(_, a)| a)
                    .filter(|a| a.eps() == g.eps() && !a.is_abelian() && a.is_regular())
                    .collect();
                let h = candidates
                    .choose(&mut rng)
                    .cloned()
                    .unwrap_or_else(|| abelian_shadow(&mut rng, &g));
                let rho = central_cocycle(&mut rng, &g, &h, k);
                let data = ExtensionData::new(g.clone(), h.clone(), k, vec![Matrix::zeros(h.dim(), h.dim()); g.dim()], rho).unwrap();
                let b = Matrix::zeros(h.dim(), g.dim());
                Generated { regime, data, b }
            }
        }
    }
}
