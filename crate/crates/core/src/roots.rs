//! Root systems of the simple Lie algebras, Chevalley structure constants and
//! parabolic Weyl group actions.
//!
//! Roots are stored in simple-root coordinates with integer entries. The
//! invariant form is carried by the Gram matrix of the simple roots, so every
//! reflection is an integer matrix. Labels follow Bourbaki.
//!
//! Cartan matrix convention: `cartan[i][j] = α_j(h_i) = 2(α_i, α_j)/(α_i, α_i)`
//! where `h_i` is the coroot of `α_i`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

pub type Root = Vec<i64>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: char,
    rank: usize,
    gram: Matrix,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    num_positive: usize,
    index: HashMap<Root, usize>,
}

fn gram_for(label: char, n: usize) -> Option<Vec<Vec<Scalar>>> {
    let s = |a: i64, b: i64| Scalar::new(a.into(), b.into());
    let mut g = vec![vec![Scalar::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Scalar>>, i: usize, j: usize, v: Scalar| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match (label, n) {
        ('A', n) if n >= 1 => {
            for i in 0..n {
                g[i][i] = s(2, 1);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, s(-1, 1));
            }
        }
        ('B', n) if n >= 2 => {
            for i in 0..n {
                g[i][i] = s(2, 1);
            }
            g[n - 1][n - 1] = s(1, 1);
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, s(-1, 1));
            }
        }
        ('C', n) if n >= 2 => {
            for i in 0..n {
                g[i][i] = s(1, 1);
            }
            g[n - 1][n - 1] = s(2, 1);
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, s(-1, 2));
            }
            link(&mut g, n - 2, n - 1, s(-1, 1));
        }
        ('D', n) if n >= 4 => {
            for i in 0..n {
                g[i][i] = s(2, 1);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, s(-1, 1));
            }
            link(&mut g, n - 3, n - 1, s(-1, 1));
        }
        ('E', n) if (6..=8).contains(&n) => {
            for i in 0..n {
                g[i][i] = s(2, 1);
            }
            // α1-α3-α4-α5-..., α2 attached to α4
            link(&mut g, 0, 2, s(-1, 1));
            link(&mut g, 1, 3, s(-1, 1));
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, s(-1, 1));
            }
        }
        ('F', 4) => {
            g[0][0] = s(2, 1);
            g[1][1] = s(2, 1);
            g[2][2] = s(1, 1);
            g[3][3] = s(1, 1);
            link(&mut g, 0, 1, s(-1, 1));
            link(&mut g, 1, 2, s(-1, 1));
            link(&mut g, 2, 3, s(-1, 2));
        }
        ('G', 2) => {
            g[0][0] = s(2, 1);
            g[1][1] = s(6, 1);
            link(&mut g, 0, 1, s(-3, 1));
        }
        _ => return None,
    }
    Some(g)
}

impl RootSystem {
    /// Builds the root system of type `label` and rank `rank`.
    pub fn new(label: char, rank: usize) -> Result<Self> {
        let label = label.to_ascii_uppercase();
        let g = gram_for(label, rank).ok_or_else(|| Error::InvalidRootSystem {
            label,
            rank,
            reason: "no simple Lie algebra of this type and rank".into(),
        })?;
        let n = rank;
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = Scalar::from_integer(2.into()) * &g[i][j] / &g[i][i];
                debug_assert!(a.is_integer());
                cartan[i][j] = a.to_integer().try_into().expect("small Cartan entry");
            }
        }
        let mut rs = RootSystem {
            label,
            rank,
            gram: Matrix::from_rows(g),
            cartan,
            roots: Vec::new(),
            num_positive: 0,
            index: HashMap::new(),
        };
        let positive = rs.enumerate_positive();
        rs.num_positive = positive.len();
        let negative: Vec<Root> = positive.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        rs.roots = positive.into_iter().chain(negative).collect();
        rs.index = rs.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(rs)
    }

    fn enumerate_positive(&self) -> Vec<Root> {
        let n = self.rank;
        let mut known: std::collections::HashSet<Root> = std::collections::HashSet::new();
        let mut level: Vec<Root> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut all = Vec::new();
        while !level.is_empty() {
            level.sort();
            level.dedup();
            for r in &level {
                known.insert(r.clone());
            }
            let mut next = Vec::new();
            for beta in &level {
                for i in 0..n {
                    let mut down = beta.clone();
                    let mut p = 0;
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - self.pair_with_coroot(beta, i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.push(up);
                    }
                }
            }
            all.extend(level);
            level = next;
        }
        all.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        all
    }

    pub fn label(&self) -> char {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// All roots: positive roots in (height, lexicographic) order, followed by
    /// their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    /// Index of `-roots[i]`.
    pub fn negative_index(&self, i: usize) -> usize {
        if i < self.num_positive {
            i + self.num_positive
        } else {
            i - self.num_positive
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive
    }

    /// `<β, α_i^∨> = β(h_i)`.
    pub fn pair_with_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(m, a)| m * a).sum()
    }

    /// `β(h)` for `h = Σ c_i h_i` given in simple-coroot coordinates.
    pub fn evaluate_on_coroots(&self, beta: &[Scalar], h: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, m) in beta.iter().enumerate() {
                acc += c * m * Scalar::from_integer(self.cartan[i][j].into());
            }
        }
        acc
    }

    /// Invariant form `(a, b)` for weights in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += &self.gram[(i, j)] * Scalar::from_integer((a[i] * b[j]).into());
                }
            }
        }
        acc
    }

    /// Coroot of `r` in simple-coroot coordinates:
    /// `h_r = Σ m_i (α_i, α_i)/(r, r) h_i`.
    pub fn coroot(&self, r: &[i64]) -> Vec<Scalar> {
        let rr = self.inner(r, r);
        (0..self.rank).map(|i| Scalar::from_integer(r[i].into()) * &self.gram[(i, i)] / &rr).collect()
    }

    /// Simple reflection `s_i` applied to a root or weight.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        let k = self.pair_with_coroot(beta, i);
        let mut out = beta.to_vec();
        out[i] -= k;
        out
    }

    /// Simple reflection `s_i` on an element of 𝔥 in coroot coordinates:
    /// `s_i(h) = h - α_i(h) h_i`.
    pub fn reflect_coweight(&self, i: usize, h: &[Scalar]) -> Vec<Scalar> {
        let mut alpha = vec![Scalar::zero(); self.rank];
        alpha[i] = Scalar::one();
        let v = self.evaluate_on_coroots(&alpha, h);
        let mut out = h.to_vec();
        out[i] -= v;
        out
    }
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

/// Integer structure constants `N_{r,s}` of a Chevalley basis.
///
/// Extraspecial pairs get the sign `+`; all other constants follow from the
/// standard identities. Brackets are `[e_r, e_s] = N_{r,s} e_{r+s}`,
/// `[e_r, e_{-r}] = h_r`, `[h_i, e_r] = r(h_i) e_r`.
#[derive(Clone, Debug)]
pub struct ChevalleyConstants {
    table: HashMap<(usize, usize), i64>,
}

impl ChevalleyConstants {
    pub fn new(rs: &RootSystem) -> Self {
        let np = rs.num_positive();
        let mut table: HashMap<(usize, usize), i64> = HashMap::new();
        let pos = rs.positive_roots();
        // positive pairs grouped by the sum, processed in order of the sum
        for xi in 0..np {
            let target = &pos[xi];
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for r in 0..xi {
                let s: Root = target.iter().zip(&pos[r]).map(|(a, b)| a - b).collect();
                if let Some(si) = rs.index_of(&s) {
                    if rs.is_positive(si) {
                        pairs.push((r, si));
                    }
                }
            }
            if pairs.is_empty() {
                continue;
            }
            // extraspecial pair: smallest first entry
            let (a, b) = pairs[0];
            let p = chain_down(rs, b, a);
            let nab = p + 1;
            table.insert((a, b), nab);
            table.insert((b, a), -nab);
            let xixi = rs.inner(target, target);
            for &(r, s) in &pairs {
                if r >= s || (r, s) == (a, b) {
                    continue;
                }
                let ra = &pos[a];
                let lookup = |x: usize, y: usize| -> Scalar { Scalar::from_integer(general_constant(rs, &table, x, y).into()) };
                let neg_a = rs.negative_index(a);
                let neg_b = rs.negative_index(b);
                let mut val = Scalar::zero();
                let s_minus_a: Root = pos[s].iter().zip(ra).map(|(x, y)| x - y).collect();
                if rs.is_root(&s_minus_a) {
                    val += lookup(s, neg_a) * lookup(r, neg_b) / rs.inner(&s_minus_a, &s_minus_a);
                }
                let r_minus_a: Root = pos[r].iter().zip(ra).map(|(x, y)| x - y).collect();
                if rs.is_root(&r_minus_a) {
                    val += lookup(neg_a, r) * lookup(s, neg_b) / rs.inner(&r_minus_a, &r_minus_a);
                }
                val = val * &xixi / Scalar::from_integer(nab.into());
                assert!(val.is_integer(), "Chevalley constant must be integral");
                let v: i64 = val.to_integer().try_into().unwrap();
                table.insert((r, s), v);
                table.insert((s, r), -v);
            }
        }
        // fill every sign pattern explicitly
        let total = rs.roots().len();
        let mut full = HashMap::new();
        for r in 0..total {
            for s in 0..total {
                let sum: Root = rs.roots()[r].iter().zip(&rs.roots()[s]).map(|(a, b)| a + b).collect();
                if rs.is_root(&sum) {
                    full.insert((r, s), general_constant(rs, &table, r, s));
                }
            }
        }
        ChevalleyConstants { table: full }
    }

    /// `N_{r,s}` by root index; zero when `r + s` is not a root.
    pub fn get(&self, r: usize, s: usize) -> i64 {
        self.table.get(&(r, s)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Largest `p` with `roots[s] - p roots[r]` a root.
fn chain_down(rs: &RootSystem, s: usize, r: usize) -> i64 {
    let mut v = rs.roots()[s].clone();
    let mut p = 0;
    loop {
        for (x, y) in v.iter_mut().zip(&rs.roots()[r]) {
            *x -= y;
        }
        if rs.is_root(&v) {
            p += 1;
        } else {
            return p;
        }
    }
}

/// Extends constants known on positive pairs to all sign patterns.
fn general_constant(rs: &RootSystem, table: &HashMap<(usize, usize), i64>, r: usize, s: usize) -> i64 {
    let roots = rs.roots();
    let sum: Root = roots[r].iter().zip(&roots[s]).map(|(a, b)| a + b).collect();
    let Some(t) = rs.index_of(&sum) else { return 0 };
    let pr = rs.is_positive(r);
    let ps = rs.is_positive(s);
    let q = |a: Scalar, b: Scalar, n: i64| -> i64 {
        let v = a / b * Scalar::from_integer(n.into());
        v.to_integer().try_into().unwrap()
    };
    match (pr, ps) {
        (true, true) => *table.get(&(r, s)).expect("positive pair computed"),
        (false, false) => -general_constant(rs, table, rs.negative_index(r), rs.negative_index(s)),
        (false, true) => -general_constant(rs, table, s, r),
        (true, false) => {
            let ms = rs.negative_index(s);
            let tt = rs.inner(&sum, &sum);
            if rs.is_positive(t) {
                // N_{r,s} = -(t,t)/(r,r) N_{-s,t}
                -q(tt, rs.inner(&roots[r], &roots[r]), general_constant(rs, table, ms, t))
            } else {
                // N_{r,s} = (t,t)/(s,s) N_{-t,r}
                let mt = rs.negative_index(t);
                q(tt, rs.inner(&roots[s], &roots[s]), general_constant(rs, table, mt, r))
            }
        }
    }
}

/// Element of the Weyl group as a word in simple reflections together with
/// its matrix on 𝔥* in simple-root coordinates (column convention).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: Matrix,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement { word: Vec::new(), matrix: Matrix::identity(rs.rank()) }
    }

    /// `s_{w_1} s_{w_2} ... s_{w_k}`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut m = Matrix::identity(rs.rank());
        for &i in word {
            m = &m * &reflection_matrix(rs, i);
        }
        WeylElement { word: word.to_vec(), matrix: m }
    }

    pub fn apply_to_weight(&self, beta: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(beta)
    }

    /// Action on 𝔥 in coroot coordinates.
    pub fn apply_to_coweight(&self, rs: &RootSystem, h: &[Scalar]) -> Vec<Scalar> {
        let mut v = h.to_vec();
        for &i in self.word.iter().rev() {
            v = rs.reflect_coweight(i, &v);
        }
        v
    }

    /// `Mᵀ G M = G`.
    pub fn preserves_form(&self, rs: &RootSystem) -> bool {
        let m = &self.matrix;
        &(&m.transpose() * rs.gram()) * m == *rs.gram()
    }
}

pub fn reflection_matrix(rs: &RootSystem, i: usize) -> Matrix {
    let n = rs.rank();
    let mut m = Matrix::identity(n);
    for j in 0..n {
        // image of α_j is α_j - a_ij α_i
        m[(i, j)] -= Scalar::from_integer(rs.cartan_matrix()[i][j].into());
    }
    m
}

/// Orbit of `start` (an element of 𝔥 in coroot coordinates) under the
/// subgroup generated by the given simple reflections. Each orbit point is
/// mapped to a shortest word `w` with `w(start) = point`.
pub fn weyl_orbit(
    rs: &RootSystem,
    generators: &[usize],
    start: &[Scalar],
    cap: usize,
) -> Result<BTreeMap<Vec<Scalar>, Vec<usize>>> {
    let mut seen: BTreeMap<Vec<Scalar>, Vec<usize>> = BTreeMap::new();
    seen.insert(start.to_vec(), Vec::new());
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(h) = queue.pop_front() {
        let word = seen[&h].clone();
        for &i in generators {
            let next = rs.reflect_coweight(i, &h);
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::Resource { what: "Weyl orbit size".into(), limit: cap, requested: seen.len() + 1 });
            }
            let mut w = vec![i];
            w.extend(&word);
            seen.insert(next.clone(), w);
            queue.push_back(next);
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn root_counts() {
        let cases = [
            ('A', 1, 2),
            ('A', 2, 6),
            ('A', 4, 20),
            ('B', 3, 18),
            ('C', 2, 8),
            ('C', 3, 18),
            ('D', 4, 24),
            ('D', 5, 40),
            ('E', 6, 72),
            ('E', 7, 126),
            ('E', 8, 240),
            ('F', 4, 48),
            ('G', 2, 12),
        ];
        for (t, n, count) in cases {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.roots().len(), count, "{t}{n}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new('D', 3).is_err());
        assert!(RootSystem::new('E', 5).is_err());
        assert!(RootSystem::new('A', 0).is_err());
        assert!(RootSystem::new('X', 2).is_err());
    }

    #[test]
    fn c2_positive_roots() {
        let rs = RootSystem::new('C', 2).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
        assert_eq!(rs.cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn highest_roots() {
        let top = |t, n| RootSystem::new(t, n).unwrap().positive_roots().last().unwrap().clone();
        assert_eq!(top('E', 8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(top('F', 4), vec![2, 3, 4, 2]);
        assert_eq!(top('G', 2), vec![3, 2]);
        assert_eq!(top('B', 3), vec![1, 2, 2]);
        assert_eq!(top('C', 3), vec![2, 2, 1]);
    }

    #[test]
    fn reflections_permute_roots() {
        for (t, n) in [('B', 3), ('G', 2), ('F', 4), ('E', 6)] {
            let rs = RootSystem::new(t, n).unwrap();
            for i in 0..n {
                for r in rs.roots() {
                    assert!(rs.is_root(&rs.reflect(i, r)));
                }
            }
        }
    }

    #[test]
    fn chevalley_magnitudes() {
        let rs = RootSystem::new('C', 2).unwrap();
        let n = ChevalleyConstants::new(&rs);
        let a1 = rs.index_of(&[1, 0]).unwrap();
        let a12 = rs.index_of(&[1, 1]).unwrap();
        assert_eq!(n.get(a1, a12).abs(), 2);
        let rs = RootSystem::new('A', 2).unwrap();
        let n = ChevalleyConstants::new(&rs);
        let (a, b) = (rs.index_of(&[1, 0]).unwrap(), rs.index_of(&[0, 1]).unwrap());
        // (α2, α1) is extraspecial since α2 precedes α1 in the root order
        assert_eq!(n.get(b, a), 1);
        assert_eq!(n.get(a, b), -1);
    }

    #[test]
    fn constants_match_root_strings() {
        for (t, k) in [('B', 3), ('C', 3), ('G', 2), ('F', 4), ('D', 4)] {
            let rs = RootSystem::new(t, k).unwrap();
            let n = ChevalleyConstants::new(&rs);
            let total = rs.roots().len();
            for r in 0..total {
                for s in 0..total {
                    let v = n.get(r, s);
                    assert_eq!(v, -n.get(s, r));
                    if v != 0 {
                        assert_eq!(v.abs(), chain_down(&rs, s, r) + 1, "{t}{k} {r} {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let rs = RootSystem::new('A', 2).unwrap();
        let rho = vec![int(1), int(1)];
        let orbit = weyl_orbit(&rs, &[0, 1], &rho, 100).unwrap();
        assert_eq!(orbit.len(), 6);
        for (h, w) in &orbit {
            let e = WeylElement::from_word(&rs, w);
            assert_eq!(&e.apply_to_coweight(&rs, &rho), h);
            assert!(e.preserves_form(&rs));
        }
        assert_eq!(weyl_orbit(&rs, &[], &rho, 100).unwrap().len(), 1);
        assert!(weyl_orbit(&rs, &[0, 1], &rho, 3).is_err());
        let a1 = RootSystem::new('A', 1).unwrap();
        let o = weyl_orbit(&a1, &[0], &[int(1)], 10).unwrap();
        assert_eq!(o.keys().cloned().collect::<Vec<_>>(), vec![vec![int(-1)], vec![int(1)]]);
    }
}
