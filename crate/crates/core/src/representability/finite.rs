//! Finite groups by multiplication table, their actions, and induction of
//! an action from a subgroup.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group as a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroupTable {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    identity: usize,
    #[serde(skip)]
    inverses: Vec<usize>,
}

fn bad_table(msg: impl Into<String>) -> Error {
    Error::InvalidGroupTable(msg.into())
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(bad_table("empty group"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(bad_table(format!("table must be {}×{}", n, n)));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(bad_table("entry out of range"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad_table("no identity element"))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| bad_table(format!("element {} has no inverse", elements[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(bad_table(format!(
                            "associativity fails on ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            elements,
            table,
            identity,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(bad_table("cyclic group of order 0"));
        }
        Self::new(
            (0..n).map(|k| k.to_string()).collect(),
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
    }

    /// Symmetries of an `n`-gon, order `2n`; `r^k s^f` has index `2k + f`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(bad_table("dihedral group of a 0-gon"));
        }
        let idx = |k: usize, f: usize| 2 * k + f;
        let mut elements = Vec::new();
        for k in 0..n {
            elements.push(format!("r{}", k));
            elements.push(format!("r{}s", k));
        }
        let table = (0..2 * n)
            .map(|a| {
                let (k1, f1) = (a / 2, a % 2);
                (0..2 * n)
                    .map(|b| {
                        let (k2, f2) = (b / 2, b % 2);
                        let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 };
                        idx(k % n, f1 ^ f2)
                    })
                    .collect()
            })
            .collect();
        Self::new(elements, table)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(transposition(n, 0, 1));
            gens.push((1..=n).map(|x| x % n).collect());
        }
        Self::generated_by_permutations(n, &gens)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Vec<usize>> = (0..n.saturating_sub(2))
            .map(|a| {
                let mut p: Vec<usize> = (0..n).collect();
                p[a] = a + 1;
                p[a + 1] = a + 2;
                p[a + 2] = a;
                p
            })
            .collect();
        Self::generated_by_permutations(n, &gens)
    }

    /// Pairs `(a, b)` with index `a·|h| + b`.
    pub fn direct_product(g: &Self, h: &Self) -> Result<Self> {
        let m = h.order();
        let n = g.order() * m;
        let elements = (0..n)
            .map(|x| format!("({}, {})", g.elements[x / m], h.elements[x % m]))
            .collect();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::new(elements, table)
    }

    /// Group of permutations of `0..degree`, which must be closed under
    /// composition. The product `σ·τ` applies `τ` first.
    pub fn from_permutations(degree: usize, perms: &[Vec<usize>]) -> Result<Self> {
        for p in perms {
            check_permutation(degree, p)?;
        }
        let index: BTreeMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != perms.len() {
            return Err(bad_table("repeated permutation"));
        }
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        index
                            .get(&compose(p, q))
                            .copied()
                            .ok_or_else(|| bad_table("permutations are not closed"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms.iter().map(|p| cycle_notation(p)).collect(), table)
    }

    /// Closure of the generators, identity first, then breadth-first.
    pub fn generated_by_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            check_permutation(degree, g)?;
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    order.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Self::from_permutations(degree, &order)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        !members.is_empty()
            && members.iter().all(|&a| a < self.order())
            && members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| members.contains(&self.mul(a, self.inverse(b))))
            })
    }

    /// Sorted subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Greedy generating set: each element not yet generated is added.
    pub fn generating_set(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for &x in subgroup {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// All subgroups as sorted element lists, ordered by size then content.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> =
            (0..self.order()).map(|x| self.closure(&[x])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for (n, h) in current.iter().enumerate() {
                for k in &current[n + 1..] {
                    let joined: Vec<usize> = h.iter().chain(k).copied().collect();
                    if found.insert(self.closure(&joined)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|h| h.len());
        out
    }

    /// Largest normal subgroup contained in `set`: `∩_g g⁻¹·set·g`.
    pub fn core(&self, set: &[usize]) -> Vec<usize> {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members
            .iter()
            .copied()
            .filter(|&k| {
                (0..self.order()).all(|g| {
                    let conj = self.mul(self.mul(g, k), self.inverse(g));
                    members.contains(&conj)
                })
            })
            .collect()
    }

    /// Table of the subgroup, with element `n` of the result being
    /// `subgroup[n]`.
    pub fn restrict(&self, subgroup: &[usize]) -> Result<Self> {
        if !self.is_subgroup(subgroup) {
            return Err(Error::InvalidSubgroup(
                "not closed under the group law".into(),
            ));
        }
        let pos: BTreeMap<usize, usize> =
            subgroup.iter().enumerate().map(|(n, &x)| (x, n)).collect();
        if pos.len() != subgroup.len() {
            return Err(Error::InvalidSubgroup("repeated element".into()));
        }
        Self::new(
            subgroup.iter().map(|&x| self.elements[x].clone()).collect(),
            subgroup
                .iter()
                .map(|&a| subgroup.iter().map(|&b| pos[&self.mul(a, b)]).collect())
                .collect(),
        )
    }
}

#[derive(Deserialize)]
struct GroupWire {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

/// `{"elements": [...], "table": [[...], ...]}`.
impl<'de> Deserialize<'de> for FiniteGroupTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = GroupWire::deserialize(deserializer)?;
        FiniteGroupTable::new(wire.elements, wire.table).map_err(de::Error::custom)
    }
}

fn check_permutation(degree: usize, p: &[usize]) -> Result<()> {
    let distinct: BTreeSet<usize> = p.iter().copied().collect();
    if p.len() != degree || distinct.len() != degree || p.iter().any(|&x| x >= degree) {
        return Err(bad_table(format!(
            "{:?} is not a permutation of 0..{}",
            p, degree
        )));
    }
    Ok(())
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

/// `(σ∘τ)(x) = σ(τ(x))`.
fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| s[x]).collect()
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// A left action `g·x` of a finite group on points `0..points`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAction {
    group: FiniteGroupTable,
    points: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteAction {
    /// `table[g][x] = g·x`; validates `e·x = x` and `(gh)·x = g·(h·x)`.
    pub fn new(group: FiniteGroupTable, points: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Error::InvalidAction(m);
        if table.len() != group.order() || table.iter().any(|r| r.len() != points) {
            return Err(bad(format!("table must be {}×{}", group.order(), points)));
        }
        if table.iter().flatten().any(|&y| y >= points) {
            return Err(bad("point out of range".into()));
        }
        if (0..points).any(|x| table[group.identity][x] != x) {
            return Err(bad("identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..points).any(|x| table[gh][x] != table[g][table[h][x]]) {
                    return Err(bad(format!(
                        "(gh)·x ≠ g·(h·x) for g = {}, h = {}",
                        group.elements[g], group.elements[h]
                    )));
                }
            }
        }
        Ok(FiniteAction {
            group,
            points,
            table,
        })
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| (0..self.points).all(|x| self.table[g][x] == x))
            .collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }
}

#[derive(Deserialize)]
struct ActionWire {
    group: FiniteGroupTable,
    points: usize,
    table: Vec<Vec<usize>>,
}

/// `{"group": <table>, "points": n, "table": [[g·x, ...], ...]}`.
impl<'de> Deserialize<'de> for FiniteAction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ActionWire::deserialize(deserializer)?;
        FiniteAction::new(wire.group, wire.points, wire.table).map_err(de::Error::custom)
    }
}

/// Induces an action of `g` from an action of the subgroup `g0`.
///
/// `act.group()` must be the table of `g0` with element `n` equal to
/// `g0[n]`, as produced by [`FiniteGroupTable::restrict`]. Points of the
/// result are classes of `G₀\(G × X)` under `h·(g, x) = (hg, h·x)`, encoded
/// as `rep·|X| + x` where `rep` runs over a transversal of the right
/// cosets `G₀g` chosen by first occurrence. `k` acts by
/// `[(g, x)] ↦ [(g k⁻¹, x)]`.
pub fn induced_action(
    g: &FiniteGroupTable,
    g0: &[usize],
    act: &FiniteAction,
) -> Result<FiniteAction> {
    let h = g.restrict(g0)?;
    if act.group.order() != h.order() {
        return Err(Error::InvalidAction(format!(
            "action is of a group of order {}, subgroup has order {}",
            act.group.order(),
            h.order()
        )));
    }
    for a in 0..h.order() {
        for b in 0..h.order() {
            if act.group.mul(a, b) != h.mul(a, b) {
                return Err(Error::InvalidAction(
                    "action group does not match the subgroup listing".into(),
                ));
            }
        }
    }
    let local: BTreeMap<usize, usize> = g0.iter().enumerate().map(|(n, &x)| (x, n)).collect();

    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for r in 0..g.order() {
        if coset_of[r] == usize::MAX {
            for &x in g0 {
                coset_of[g.mul(x, r)] = reps.len();
            }
            reps.push(r);
        }
    }

    let nx = act.points;
    let table = (0..g.order())
        .map(|k| {
            let k_inv = g.inverse(k);
            (0..reps.len() * nx)
                .map(|y| {
                    let (ri, x) = (y / nx, y % nx);
                    let moved = g.mul(reps[ri], k_inv);
                    let rj = coset_of[moved];
                    let hh = g.mul(moved, g.inverse(reps[rj]));
                    let hl = local[&hh];
                    rj * nx + act.act(act.group.inverse(hl), x)
                })
                .collect()
        })
        .collect();
    FiniteAction::new(g.clone(), reps.len() * nx, table)
}

/// All faithful actions of `h` on `n` points for `1 <= n <= max_points`,
/// as homomorphisms into `S_n` determined by generator images.
pub fn enumerate_faithful_actions(h: &FiniteGroupTable, max_points: usize) -> Vec<FiniteAction> {
    let all: Vec<usize> = (0..h.order()).collect();
    let gens = h.generating_set(&all);
    let mut out = Vec::new();
    for n in 1..=max_points {
        let sym = all_permutations(n);
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<&Vec<usize>> = choice.iter().map(|&c| &sym[c]).collect();
            if let Some(table) = extend_homomorphism(h, &gens, &images, n) {
                if let Ok(action) = FiniteAction::new(h.clone(), n, table) {
                    if action.is_faithful() {
                        out.push(action);
                    }
                }
            }
            if !advance(&mut choice, sym.len()) {
                break;
            }
        }
    }
    out
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut p, &mut out);
    out.sort();
    out
}

fn heap_permutations(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, p, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}

/// Images of all elements when `gens ↦ images` extends to a homomorphism.
fn extend_homomorphism(
    h: &FiniteGroupTable,
    gens: &[usize],
    images: &[&Vec<usize>],
    n: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut img: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    img[h.identity] = Some((0..n).collect());
    let mut queue = VecDeque::from([h.identity]);
    while let Some(x) = queue.pop_front() {
        let px = img[x].clone().expect("queued elements have images");
        for (&s, ps) in gens.iter().zip(images) {
            let y = h.mul(s, x);
            let py = compose(ps, &px);
            match &img[y] {
                Some(existing) if *existing != py => return None,
                Some(_) => {}
                None => {
                    img[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
    }
    img.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_action(group: FiniteGroupTable) -> FiniteAction {
        // ℤ/2 = {0, 2} listed in that order; 2 swaps the two points
        FiniteAction::new(group, 2, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(FiniteGroupTable::cyclic(5).unwrap().order(), 5);
        assert_eq!(FiniteGroupTable::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroupTable::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroupTable::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroupTable::alternating(4).unwrap().order(), 12);
        let z4 = FiniteGroupTable::cyclic(4).unwrap();
        let z2 = FiniteGroupTable::cyclic(2).unwrap();
        assert_eq!(
            FiniteGroupTable::direct_product(&z4, &z2).unwrap().order(),
            8
        );
    }

    #[test]
    fn invalid_tables_rejected() {
        let names = vec!["e".to_string(), "x".to_string()];
        assert!(FiniteGroupTable::new(names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroupTable::new(names, vec![vec![0, 1]]).is_err());
        assert!(FiniteGroupTable::from_permutations(3, &[vec![0, 1, 2], vec![1, 2, 0]]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        // S3: 1 + 3 + 1 + 1; S4 has 30 subgroups; ℤ/4 has 3
        assert_eq!(FiniteGroupTable::symmetric(3).unwrap().subgroups().len(), 6);
        assert_eq!(
            FiniteGroupTable::symmetric(4).unwrap().subgroups().len(),
            30
        );
        assert_eq!(FiniteGroupTable::cyclic(4).unwrap().subgroups().len(), 3);
        assert_eq!(FiniteGroupTable::dihedral(4).unwrap().subgroups().len(), 10);
    }

    #[test]
    fn induced_from_z2_in_z4() {
        let g = FiniteGroupTable::cyclic(4).unwrap();
        let g0 = [0, 2];
        let act = swap_action(g.restrict(&g0).unwrap());
        let y = induced_action(&g, &g0, &act).unwrap();
        assert_eq!(y.points(), 4);
        assert!(y.is_faithful());
    }

    #[test]
    fn index_one_induction_is_the_original() {
        let g = FiniteGroupTable::symmetric(3).unwrap();
        let all: Vec<usize> = (0..6).collect();
        for act in enumerate_faithful_actions(&g, 3) {
            let y = induced_action(&g, &all, &act).unwrap();
            assert_eq!(y, act);
        }
    }

    #[test]
    fn trivial_action_kernel_is_core() {
        let g = FiniteGroupTable::symmetric(3).unwrap();
        let a3 = g.subgroups().into_iter().find(|h| h.len() == 3).unwrap();
        let h = g.restrict(&a3).unwrap();
        let trivial = FiniteAction::new(h, 1, vec![vec![0]; 3]).unwrap();
        let y = induced_action(&g, &a3, &trivial).unwrap();
        assert_eq!(y.points(), 2);
        assert_eq!(y.kernel(), a3);
    }

    #[test]
    fn faithful_action_counts() {
        // homomorphisms ℤ/3 → S_n that are injective: 0, 0, 2, 8
        let z3 = FiniteGroupTable::cyclic(3).unwrap();
        assert_eq!(enumerate_faithful_actions(&z3, 2).len(), 0);
        assert_eq!(enumerate_faithful_actions(&z3, 3).len(), 2);
        assert_eq!(enumerate_faithful_actions(&z3, 4).len(), 10);
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(enumerate_faithful_actions(&s3, 3).len(), 6);
    }

    #[test]
    fn core_examples() {
        let g = FiniteGroupTable::symmetric(3).unwrap();
        let two = g.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
        assert_eq!(g.core(&two), vec![g.identity()]);
    }

    #[test]
    fn bad_subgroup_and_action() {
        let g = FiniteGroupTable::cyclic(4).unwrap();
        let h = g.restrict(&[0, 2]).unwrap();
        assert!(matches!(
            g.restrict(&[0, 1]),
            Err(Error::InvalidSubgroup(_))
        ));
        assert!(matches!(
            FiniteAction::new(h.clone(), 2, vec![vec![1, 0], vec![1, 0]]),
            Err(Error::InvalidAction(_))
        ));
        let act = swap_action(h);
        assert!(induced_action(&g, &[0, 1], &act).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = FiniteGroupTable::dihedral(3).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroupTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let act = enumerate_faithful_actions(&g, 3).remove(0);
        let json = serde_json::to_string(&act).unwrap();
        assert_eq!(serde_json::from_str::<FiniteAction>(&json).unwrap(), act);
        let bad = r#"{"elements":["e","x"],"table":[[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<FiniteGroupTable>(bad).is_err());
    }
}
