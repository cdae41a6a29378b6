use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Display;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuotError;

/// Exhaustive subgroup searches refuse groups larger than this.
pub const HARD_ORDER_CAP: usize = 2048;

/// A finite group as an explicit multiplication table over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    labels: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

/// A subgroup given by its element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: FixedBitSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn members(&self) -> Vec<usize> {
        self.elements.ones().collect()
    }
}

impl FiniteGroupTable {
    /// Builds the table of a group given by its elements and a product;
    /// elements are relabelled in sorted order.
    pub fn from_fn<T, F>(elements: Vec<T>, mul: F) -> Result<Self, QuotError>
    where
        T: Ord + Clone + Display,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let index: BTreeMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for x in &elements {
            for y in &elements {
                let z = mul(x, y);
                let j = *index.get(&z).ok_or_else(|| QuotError::NotAGroup(format!("{x}·{y} = {z} not listed")))?;
                table.push(j as u32);
            }
        }
        let labels = elements.iter().map(ToString::to_string).collect();
        Self::from_table(labels, table)
    }

    /// Closes `identity` under right multiplication by the generators and
    /// tabulates the result. `right_mul(x, i)` must return the canonical key
    /// of `x·gᵢ`. Fails once more than `cap` elements have been found.
    /// Returns the keys in label order.
    pub fn from_generators<K, F>(
        identity: K,
        n_gens: usize,
        right_mul: F,
        cap: usize,
    ) -> Result<(Self, Vec<K>), QuotError>
    where
        K: Ord + Clone + Display,
        F: Fn(&K, usize) -> K,
    {
        let mut seen: BTreeMap<K, usize> = BTreeMap::from([(identity.clone(), 0)]);
        let mut keys = vec![identity];
        // parent[y], gen[y]: y = keys[parent]·g_gen, in discovery order
        let mut tree: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut next = 0;
        while next < keys.len() {
            for g in 0..n_gens {
                let y = right_mul(&keys[next], g);
                let j = match seen.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = keys.len();
                        if j >= cap {
                            return Err(QuotError::OrderCapExceeded { cap });
                        }
                        seen.insert(y.clone(), j);
                        keys.push(y);
                        tree.push((next, g));
                        j
                    }
                };
                right.push(j as u32);
            }
            next += 1;
        }
        let n = keys.len();
        let mut disc = vec![0u32; n * n];
        for x in 0..n {
            let row = &mut disc[x * n..(x + 1) * n];
            row[0] = x as u32;
            for y in 1..n {
                let (p, g) = tree[y];
                row[y] = right[row[p] as usize * n_gens + g];
            }
        }
        // relabel in key order so the result does not depend on the search
        let rank: Vec<usize> = seen.values().copied().collect();
        let mut pos = vec![0usize; n];
        for (sorted, &found) in rank.iter().enumerate() {
            pos[found] = sorted;
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[pos[x] * n + pos[y]] = pos[disc[x * n + y] as usize] as u32;
            }
        }
        let labels = seen.keys().map(ToString::to_string).collect();
        let gen_idx: Vec<usize> = (0..n_gens).map(|g| pos[right[g] as usize]).collect();
        Ok((Self::assemble(labels, table, pos[0], gen_idx), seen.into_keys().collect()))
    }

    /// Validates a raw table: square, Latin, with a two-sided identity.
    pub fn from_table(labels: Vec<String>, table: Vec<u32>) -> Result<Self, QuotError> {
        let n = labels.len();
        if table.len() != n * n || n == 0 {
            return Err(QuotError::NotAGroup("table is not square".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| QuotError::NotAGroup("no identity".into()))?;
        let mut g = Self::assemble(labels, table, identity, Vec::new());
        if !g.is_latin_square() {
            return Err(QuotError::NotAGroup("not a Latin square".into()));
        }
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn assemble(labels: Vec<String>, table: Vec<u32>, identity: usize, generators: Vec<usize>) -> Self {
        let n = labels.len();
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| table[x * n + y] as usize == identity) {
                inverse[x] = y as u32;
            }
        }
        FiniteGroupTable { labels, table, identity, inverse, generators }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        for x in 0..self.order() {
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// A generating set.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Row-major table of indices.
    pub fn raw_table(&self) -> &[u32] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// `g·x·g⁻¹`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        for x in 0..n {
            seen.clear();
            for y in 0..n {
                seen.insert(self.mul(x, y));
            }
            if seen.count_ones(..) != n {
                return false;
            }
            seen.clear();
            for y in 0..n {
                seen.insert(self.mul(y, x));
            }
            if seen.count_ones(..) != n {
                return false;
            }
        }
        true
    }

    /// Full check for order ≤ 512, otherwise `10⁵` random triples.
    pub fn is_associative(&self, seed: u64) -> bool {
        let n = self.order();
        let assoc = |x, y, z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
        if n <= 512 {
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| assoc(x, y, z))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100_000).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&x| self.generators.iter().all(|&y| self.commute(x, y)))
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert(self.identity);
        self.close_under(&mut set, vec![self.identity], gens);
        Subgroup { elements: set }
    }

    /// Extends `set` by right multiplication with `gens`, starting from `queue`.
    fn close_under(&self, set: &mut FixedBitSet, queue: Vec<usize>, gens: &[usize]) {
        let mut queue = VecDeque::from(queue);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push_back(y);
                }
            }
        }
    }

    pub fn is_subgroup(&self, set: &FixedBitSet) -> bool {
        set.contains(self.identity) && set.ones().all(|x| set.ones().all(|y| set.contains(self.mul(x, y))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.elements.ones().all(|x| self.generators.iter().all(|&g| h.contains(self.conj(g, x))))
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let m = h.members();
        m.iter().all(|&x| m.iter().all(|&y| self.commute(x, y)))
    }

    pub fn center(&self) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        for x in 0..self.order() {
            if self.generators.iter().all(|&g| self.commute(g, x)) {
                set.insert(x);
            }
        }
        Subgroup { elements: set }
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert(x);
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            for &g in &self.generators {
                let y = self.conj(g, out[i]);
                if !set.put(y) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Classes ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut done = FixedBitSet::with_capacity(self.order());
        let mut out = Vec::new();
        for x in 0..self.order() {
            if !done.contains(x) {
                let c = self.conjugacy_class(x);
                for &y in &c {
                    done.insert(y);
                }
                out.push(c);
            }
        }
        out
    }

    pub fn normal_closure(&self, xs: &[usize]) -> Subgroup {
        let gens: Vec<usize> = xs.iter().flat_map(|&x| self.conjugacy_class(x)).collect();
        self.generate(&gens)
    }

    /// The table of a subgroup, with labels inherited.
    pub fn subgroup_table(&self, h: &Subgroup) -> FiniteGroupTable {
        let members = h.members();
        let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &x in &members {
            for &y in &members {
                table.push(pos[&self.mul(x, y)] as u32);
            }
        }
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        Self::from_table(labels, table).expect("a subgroup is a group")
    }

    fn check_cap(&self) -> Result<(), QuotError> {
        if self.order() > HARD_ORDER_CAP {
            return Err(QuotError::OrderCapExceeded { cap: HARD_ORDER_CAP });
        }
        Ok(())
    }

    /// Every subgroup, by cyclic extension: each subgroup found is extended by
    /// each element outside it. Sorted by order, then element set.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>, QuotError> {
        self.check_cap()?;
        let trivial = self.generate(&[]);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.elements.clone()]);
        // each subgroup travels with a generating set
        let mut layer = vec![(trivial.clone(), Vec::new())];
        let mut all = vec![trivial];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (h, gens) in &layer {
                for x in 0..self.order() {
                    if h.contains(x) {
                        continue;
                    }
                    let mut g: Vec<usize> = gens.clone();
                    g.push(x);
                    let s = self.generate(&g);
                    if seen.insert(s.elements.clone()) {
                        all.push(s.clone());
                        next.push((s, g));
                    }
                }
            }
            layer = next;
        }
        sort_subgroups(&mut all);
        Ok(all)
    }

    /// Normal abelian subgroups containing `base` (itself normal abelian),
    /// grown one conjugacy class at a time.
    fn normal_abelian_above(&self, base: Subgroup) -> Vec<Subgroup> {
        let n = self.order();
        let classes = self.conjugacy_classes();
        // elements commuting with every member of the class
        let class_cent: Vec<FixedBitSet> = classes
            .iter()
            .map(|c| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert_range(..);
                for &x in c {
                    let mut cx = FixedBitSet::with_capacity(n);
                    for y in 0..n {
                        if self.commute(x, y) {
                            cx.insert(y);
                        }
                    }
                    s.intersect_with(&cx);
                }
                s
            })
            .collect();
        let usable: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].iter().all(|&x| class_cent[i].contains(x))).collect();
        let mut seen: HashSet<FixedBitSet> = HashSet::from([base.elements.clone()]);
        let mut stack = vec![base.clone()];
        let mut out = vec![base];
        while let Some(a) = stack.pop() {
            for &i in &usable {
                if classes[i].iter().all(|&x| a.contains(x)) || !a.elements.is_subset(&class_cent[i]) {
                    continue;
                }
                let mut set = a.elements.clone();
                let queue: Vec<usize> = a.elements.ones().collect();
                self.close_under(&mut set, queue, &classes[i]);
                if seen.insert(set.clone()) {
                    let s = Subgroup { elements: set };
                    stack.push(s.clone());
                    out.push(s);
                }
            }
        }
        out
    }

    /// Every normal abelian subgroup with its index, sorted by index and then
    /// by element set.
    pub fn all_normal_abelian_subgroups(&self) -> Result<Vec<(Subgroup, usize)>, QuotError> {
        self.check_cap()?;
        let mut all = self.normal_abelian_above(self.generate(&[]));
        sort_by_index(&mut all);
        Ok(all.into_iter().map(|s| (self.order() / s.order(), s)).map(|(i, s)| (s, i)).collect())
    }

    /// The same list, obtained by filtering [`Self::all_subgroups`].
    pub fn normal_abelian_by_filter(&self) -> Result<Vec<(Subgroup, usize)>, QuotError> {
        let mut all: Vec<Subgroup> = self
            .all_subgroups()?
            .into_iter()
            .filter(|h| self.is_normal(h) && self.is_abelian_subgroup(h))
            .collect();
        sort_by_index(&mut all);
        Ok(all.into_iter().map(|s| (self.order() / s.order(), s)).map(|(i, s)| (s, i)).collect())
    }

    /// A normal abelian subgroup of least index. Any normal abelian `A`
    /// lies in the normal abelian `A·z(G)`, so the search starts at the center.
    pub fn max_normal_abelian(&self) -> Result<Subgroup, QuotError> {
        self.check_cap()?;
        let mut all = self.normal_abelian_above(self.center());
        sort_by_index(&mut all);
        Ok(all.swap_remove(0))
    }

    pub fn min_index_normal_abelian(&self) -> Result<usize, QuotError> {
        Ok(self.order() / self.max_normal_abelian()?.order())
    }
}

fn sort_subgroups(v: &mut [Subgroup]) {
    v.sort_by_cached_key(|h| (h.order(), h.members()));
}

/// Largest first, ties broken by the sorted element lists.
fn sort_by_index(v: &mut [Subgroup]) {
    v.sort_by_cached_key(|h| (std::cmp::Reverse(h.order()), h.members()));
}

/// Small groups used to exercise the search.
pub mod fixtures {
    use super::FiniteGroupTable;

    /// Permutations of three points, composed right to left.
    pub fn sym3() -> FiniteGroupTable {
        let perms: Vec<[u8; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels: Vec<String> = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        FiniteGroupTable::from_fn(labels, |x, y| {
            let (p, q) = (x.as_bytes(), y.as_bytes());
            let d = |c: u8| (c - b'0') as usize;
            (0..3).map(|i| p[d(q[i])] as char).collect()
        })
        .expect("Sym(3)")
    }

    /// `±1, ±i, ±j, ±k`.
    pub fn quaternion() -> FiniteGroupTable {
        // (sign, unit) with units 0..4 = 1, i, j, k
        let mul = |x: &(i8, u8), y: &(i8, u8)| {
            let (s, u) = match (x.1, y.1) {
                (0, v) | (v, 0) => (1, v),
                (a, b) if a == b => (-1, 0),
                (1, 2) => (1, 3),
                (2, 1) => (-1, 3),
                (2, 3) => (1, 1),
                (3, 2) => (-1, 1),
                (3, 1) => (1, 2),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            };
            (x.0 * y.0 * s, u)
        };
        let elems: Vec<(i8, u8)> = [1, -1].iter().flat_map(|&s| (0..4).map(move |u| (s, u))).collect();
        let labels: Vec<String> =
            elems.iter().map(|&(s, u)| format!("{}{}", if s < 0 { "-" } else { "+" }, ["1", "i", "j", "k"][u as usize])).collect();
        let parse = |l: &String| elems[labels.iter().position(|m| m == l).expect("listed")];
        let show = |e: (i8, u8)| labels[elems.iter().position(|&f| f == e).expect("listed")].clone();
        FiniteGroupTable::from_fn(labels.clone(), |x, y| show(mul(&parse(x), &parse(y)))).expect("Q8")
    }

    /// `ℤ/m`.
    pub fn cyclic(m: u32) -> FiniteGroupTable {
        FiniteGroupTable::from_fn((0..m).collect(), |x, y| (x + y) % m).expect("cyclic group")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn sym3_search() {
        let g = sym3();
        assert_eq!(g.order(), 6);
        assert!(g.is_associative(0));
        assert!(!g.is_abelian());
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 3);
        assert_eq!(g.all_subgroups().unwrap().len(), 6);
        assert_eq!(g.min_index_normal_abelian().unwrap(), 2);
        let na = g.all_normal_abelian_subgroups().unwrap();
        assert_eq!(na.iter().map(|(_, i)| *i).collect::<Vec<_>>(), vec![2, 6]);
        assert_eq!(na, g.normal_abelian_by_filter().unwrap());
    }

    #[test]
    fn quaternion_search() {
        let g = quaternion();
        assert_eq!(g.order(), 8);
        assert!(g.is_associative(0));
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.all_subgroups().unwrap().len(), 6);
        assert_eq!(g.min_index_normal_abelian().unwrap(), 2);
        assert_eq!(g.all_normal_abelian_subgroups().unwrap(), g.normal_abelian_by_filter().unwrap());
    }

    #[test]
    fn abelian_and_trivial() {
        let g = cyclic(12);
        assert!(g.is_abelian());
        assert_eq!(g.min_index_normal_abelian().unwrap(), 1);
        assert_eq!(g.all_subgroups().unwrap().len(), 6);
        let t = cyclic(1);
        assert_eq!(t.min_index_normal_abelian().unwrap(), 1);
        let na = g.all_normal_abelian_subgroups().unwrap();
        assert_eq!(na.first().unwrap().1, 1);
        assert!(na.iter().all(|(h, i)| h.order() * i == 12));
    }

    #[test]
    fn generator_construction_is_relabelled() {
        // ℤ/6 from the generator 1, and from the generator 5
        let (a, ka) = FiniteGroupTable::from_generators(0u32, 1, |x, _| (x + 1) % 6, 512).unwrap();
        let (b, kb) = FiniteGroupTable::from_generators(0u32, 1, |x, _| (x + 5) % 6, 512).unwrap();
        assert_eq!(ka, kb);
        assert_eq!(a.raw_table(), b.raw_table());
        assert_eq!(a.labels(), b.labels());
        assert!(matches!(
            FiniteGroupTable::from_generators(0u32, 1, |x, _| (x + 1) % 600, 512),
            Err(QuotError::OrderCapExceeded { cap: 512 })
        ));
    }

    #[test]
    fn rejects_non_groups() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroupTable::from_table(labels.clone(), vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroupTable::from_table(labels, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn subgroup_table_and_lagrange() {
        let g = sym3();
        for h in g.all_subgroups().unwrap() {
            assert_eq!(g.order() % h.order(), 0);
            assert!(g.is_subgroup(&h.elements));
            let t = g.subgroup_table(&h);
            assert_eq!(t.order(), h.order());
        }
    }
}
