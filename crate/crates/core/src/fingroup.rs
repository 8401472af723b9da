//! Finite groups as validated multiplication tables.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intlat::{FgAbGroup, Int, IntMatrix};

/// Extra structure that lets resolutions be built in closed form.
#[derive(Clone, Debug)]
pub enum GroupStructure {
    /// Cyclic of order m; element i is the i-th power of the generator.
    Cyclic(usize),
    /// Direct product; element `a + |A| b` is the pair (a, b).
    Product(Arc<FinGroup>, Arc<FinGroup>),
    /// σ^i τ^j at index i + 8j.
    Modular16,
    Generic,
}

#[derive(Clone)]
pub struct FinGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<(String, usize)>,
    words: Vec<Vec<usize>>,
    element_names: Vec<String>,
    structure: GroupStructure,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup({}, order {})", self.name, self.order())
    }
}

impl FinGroup {
    /// Validates `table` as a group law and computes words in the generators.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, generators: Vec<(String, usize)>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not a square table of element indices".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {} has no inverse", a)))?;
            inverse[a] = b;
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails for ({}, {}, {})",
                                a, b, c
                            )));
                        }
                    }
                }
            }
        }
        for (g, idx) in &generators {
            if *idx >= n {
                return Err(Error::InvalidGroup(format!("generator {} out of range", g)));
            }
        }
        // breadth-first words, right multiplication by generators in order
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[identity] = Some(Vec::new());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (k, (_, gk)) in generators.iter().enumerate() {
                let y = table[x][*gk];
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(k);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        if words.iter().any(|w| w.is_none()) {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.unwrap()).collect();
        let element_names = words.iter().map(|w| render_word(w, &generators)).collect();
        Ok(FinGroup {
            name: name.to_string(),
            table,
            identity,
            inverse,
            generators,
            words,
            element_names,
            structure: GroupStructure::Generic,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = self.identity;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.1).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.0 == name)
    }

    /// Minimal word (generator indices) for an element.
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn structure(&self) -> &GroupStructure {
        &self.structure
    }

    pub fn eval_word(&self, w: &[usize]) -> usize {
        w.iter().fold(self.identity, |x, &k| self.mul(x, self.generators[k].1))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Parses words such as `e`, `sigma^3*tau`, `tau*sigma^-1`.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(self.identity);
        }
        let mut x = self.identity;
        for factor in s.split('*') {
            let factor = factor.trim();
            if factor == "e" || factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{}`", factor)))?,
                ),
                None => (factor, 1),
            };
            let k = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", name)))?;
            x = self.mul(x, self.pow(self.generators[k].1, exp));
        }
        Ok(x)
    }

    fn with_structure(mut self, s: GroupStructure) -> Self {
        self.structure = s;
        self
    }

    fn with_names(mut self, names: Vec<String>) -> Self {
        self.element_names = names;
        self
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn render_word(w: &[usize], gens: &[(String, usize)]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &gens[w[i]].0;
        parts.push(if j - i == 1 { name.clone() } else { format!("{}^{}", name, j - i) });
        i = j;
    }
    parts.join("*")
}

pub fn cyclic(m: usize) -> Result<FinGroup> {
    cyclic_named(m, "sigma")
}

pub fn cyclic_named(m: usize, gen: &str) -> Result<FinGroup> {
    if m == 0 {
        return Err(Error::InvalidGroup("cyclic group needs m ≥ 1".into()));
    }
    let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    let gens = if m == 1 { vec![] } else { vec![(gen.to_string(), 1 % m)] };
    let names = (0..m)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => gen.to_string(),
            _ => format!("{}^{}", gen, i),
        })
        .collect();
    Ok(FinGroup::from_table(&format!("C{}", m), table, gens)?
        .with_structure(GroupStructure::Cyclic(m))
        .with_names(names))
}

/// Direct product with element `(a, b)` at index `a + |A| b`.
pub fn direct_product(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> Result<FinGroup> {
    let na = a.order();
    let nb = b.order();
    let n = na * nb;
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (xa, xb) = (x % na, x / na);
                    let (ya, yb) = (y % na, y / na);
                    a.mul(xa, ya) + na * b.mul(xb, yb)
                })
                .collect()
        })
        .collect();
    let mut gens: Vec<(String, usize)> = Vec::new();
    for (g, idx) in a.generators() {
        gens.push((g.clone(), idx + na * b.identity()));
    }
    for (g, idx) in b.generators() {
        let mut name = g.clone();
        while gens.iter().any(|x| x.0 == name) {
            name.push('\'');
        }
        gens.push((name, a.identity() + na * idx));
    }
    let g = FinGroup::from_table(&format!("{}x{}", a.name(), b.name()), table, gens)?;
    Ok(g.with_structure(GroupStructure::Product(a.clone(), b.clone())))
}

pub fn klein() -> Result<FinGroup> {
    let a = Arc::new(cyclic_named(2, "sigma")?);
    let b = Arc::new(cyclic_named(2, "tau")?);
    let mut g = direct_product(&a, &b)?;
    g.name = "klein".into();
    Ok(g)
}

/// The modular group of order 16: σ^8 = τ^2 = τστσ^3 = e, so τσ = σ^5 τ.
pub fn modular16() -> Result<FinGroup> {
    let idx = |i: usize, j: usize| (i % 8) + 8 * (j % 2);
    let table = (0..16)
        .map(|x| {
            (0..16)
                .map(|y| {
                    let (a, b) = (x % 8, x / 8);
                    let (c, d) = (y % 8, y / 8);
                    // σ^a τ^b σ^c τ^d = σ^(a + c·5^b) τ^(b+d)
                    let shift = if b == 1 { 5 * c } else { c };
                    idx(a + shift, b + d)
                })
                .collect()
        })
        .collect();
    let gens = vec![("sigma".to_string(), 1), ("tau".to_string(), 8)];
    let names = (0..16)
        .map(|x| {
            let (i, j) = (x % 8, x / 8);
            let s = match i {
                0 => String::new(),
                1 => "sigma".into(),
                _ => format!("sigma^{}", i),
            };
            match (s.is_empty(), j) {
                (true, 0) => "e".into(),
                (true, _) => "tau".into(),
                (false, 0) => s,
                (false, _) => format!("{}*tau", s),
            }
        })
        .collect();
    Ok(FinGroup::from_table("modular16", table, gens)?
        .with_structure(GroupStructure::Modular16)
        .with_names(names))
}

pub fn builtin(name: &str, params: &[usize]) -> Result<FinGroup> {
    match (name, params) {
        ("cyclic", [m]) => cyclic(*m),
        ("klein", []) => klein(),
        ("modular16" | "m16", []) => modular16(),
        _ => Err(Error::UnknownBuiltin(format!("{}{:?}", name, params))),
    }
}

/// A subgroup with its own table; `embedding[i]` is the parent index of element i.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FinGroup>,
    group: Arc<FinGroup>,
    embedding: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FinGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn order(&self) -> usize {
        self.embedding.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.embedding.contains(&g)
    }

    /// Own index of a parent element in the subgroup.
    pub fn own_index(&self, g: usize) -> Option<usize> {
        self.embedding.iter().position(|&x| x == g)
    }

    pub fn elements(&self) -> BTreeSet<usize> {
        self.embedding.iter().copied().collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// Representatives t of the right cosets H t, in increasing parent index order.
    pub fn right_coset_reps(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for t in 0..g.order() {
            if seen[t] {
                continue;
            }
            reps.push(t);
            for &h in &self.embedding {
                seen[g.mul(h, t)] = true;
            }
        }
        reps
    }

    /// Writes `g = h t` with h in the subgroup (own index) and t a coset representative.
    pub fn decompose(&self, g: usize, reps: &[usize]) -> (usize, usize) {
        let p = &self.parent;
        for (k, &t) in reps.iter().enumerate() {
            let h = p.mul(g, p.inv(t));
            if let Some(hi) = self.own_index(h) {
                return (hi, k);
            }
        }
        unreachable!("coset representatives cover the group")
    }

    /// Invariant factors of an abelian subgroup.
    pub fn abelian_invariants(&self) -> Option<Vec<Int>> {
        if !self.is_abelian() {
            return None;
        }
        Some(abelian_invariants(&self.group))
    }
}

/// Invariant factors of an abelian group, from the relation lattice of its generators.
pub fn abelian_invariants(g: &FinGroup) -> Vec<Int> {
    let gens = g.generator_elements();
    let s = gens.len();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let mut rels: Vec<Vec<Int>> = Vec::new();
    let total: usize = orders.iter().product();
    for code in 0..total {
        let mut c = code;
        let mut exps = vec![0usize; s];
        for k in 0..s {
            exps[k] = c % orders[k];
            c /= orders[k];
        }
        let mut x = g.identity();
        for k in 0..s {
            x = g.mul(x, g.pow(gens[k], exps[k] as i64));
        }
        if x == g.identity() {
            rels.push(exps.iter().map(|&e| Int::from(e)).collect());
        }
    }
    for k in 0..s {
        let mut e = vec![Int::from(0); s];
        e[k] = Int::from(orders[k]);
        rels.push(e);
    }
    FgAbGroup::new(s, IntMatrix::from_columns(s, &rels)).expect("relations").invariants()
}

pub fn subgroup_from_generators(g: &Arc<FinGroup>, elements: &[usize]) -> Result<Subgroup> {
    for &x in elements {
        if x >= g.order() {
            return Err(Error::InvalidGroup(format!("element {} out of range", x)));
        }
    }
    let mut set = BTreeSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in elements {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    build_subgroup(g, &set, elements)
}

fn build_subgroup(g: &Arc<FinGroup>, set: &BTreeSet<usize>, gens: &[usize]) -> Result<Subgroup> {
    let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != g.identity()).collect();
    let mut dedup: Vec<usize> = Vec::new();
    for x in gens {
        if !dedup.contains(&x) {
            dedup.push(x);
        }
    }
    // cyclic case: order the elements by powers so the closed-form resolution applies
    let cyclic_gen = if dedup.len() == 1 {
        Some(dedup[0])
    } else {
        set.iter().copied().find(|&x| g.element_order(x) == set.len()).filter(|_| dedup.is_empty())
    };
    let (embedding, structure): (Vec<usize>, GroupStructure) = match cyclic_gen {
        Some(c) => ((0..set.len()).map(|i| g.pow(c, i as i64)).collect(), GroupStructure::Cyclic(set.len())),
        None => (set.iter().copied().collect(), GroupStructure::Generic),
    };
    let n = embedding.len();
    let pos = |x: usize| embedding.iter().position(|&y| y == x).expect("closed");
    let table: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| pos(g.mul(embedding[a], embedding[b]))).collect()).collect();
    let own_gens: Vec<(String, usize)> = match cyclic_gen {
        Some(c) if n > 1 => vec![(g.element_name(c).to_string(), 1)],
        _ => dedup.iter().map(|&x| (g.element_name(x).to_string(), pos(x))).collect(),
    };
    let names: Vec<String> = embedding.iter().map(|&x| g.element_name(x).to_string()).collect();
    let name = format!(
        "<{}>",
        own_gens.iter().map(|x| x.0.clone()).collect::<Vec<_>>().join(",")
    );
    let grp = FinGroup::from_table(&name, table, own_gens)?.with_structure(structure).with_names(names);
    Ok(Subgroup { parent: g.clone(), group: Arc::new(grp), embedding })
}

fn closure(g: &FinGroup, seed: u64) -> u64 {
    let mut set = seed | (1u64 << g.identity());
    loop {
        let mut next = set;
        for a in 0..g.order() {
            if set >> a & 1 == 0 {
                continue;
            }
            for b in 0..g.order() {
                if set >> b & 1 == 1 {
                    next |= 1u64 << g.mul(a, b);
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn bits_to_set(bits: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| bits >> i & 1 == 1).collect()
}

/// All subgroups (|G| ≤ 64), ordered by size then by element set.
pub fn all_subgroups(g: &Arc<FinGroup>) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > 64 {
        return Err(Error::SizeGuard("all_subgroups needs |G| ≤ 64".into()));
    }
    let cyclic: Vec<u64> = (0..n).map(|x| closure(g, 1u64 << x)).collect();
    let mut found: BTreeSet<u64> = cyclic.iter().copied().collect();
    let mut frontier: Vec<u64> = found.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for &c in &cyclic {
                if h & c == c {
                    continue;
                }
                let j = closure(g, h | c);
                if found.insert(j) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut list: Vec<u64> = found.into_iter().collect();
    list.sort_by_key(|&b| (b.count_ones(), bits_to_set(b, n).into_iter().collect::<Vec<_>>()));
    list.into_iter()
        .map(|b| {
            let set = bits_to_set(b, n);
            let gens = minimal_generators(g, &set);
            build_subgroup(g, &set, &gens)
        })
        .collect()
}

/// Greedy generating set: repeatedly add the smallest element outside the current closure.
fn minimal_generators(g: &FinGroup, set: &BTreeSet<usize>) -> Vec<usize> {
    // prefer a single generator of maximal order
    if let Some(&c) = set.iter().find(|&&x| g.element_order(x) == set.len()) {
        return if set.len() == 1 { vec![] } else { vec![c] };
    }
    let mut gens = Vec::new();
    let mut cur = 1u64 << g.identity();
    let mut cands: Vec<usize> = set.iter().copied().collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    for x in cands {
        if cur >> x & 1 == 0 {
            gens.push(x);
            cur = closure(g, cur | 1u64 << x);
        }
    }
    gens
}

pub fn is_abelian(h: &Subgroup) -> bool {
    h.is_abelian()
}

/// One Sylow p-subgroup (the first in the deterministic subgroup order).
pub fn sylow(g: &Arc<FinGroup>, p: usize) -> Result<Subgroup> {
    let mut q = 1;
    let mut n = g.order();
    while p > 1 && n.is_multiple_of(p) {
        q *= p;
        n /= p;
    }
    if q == 1 {
        return subgroup_from_generators(g, &[]);
    }
    all_subgroups(g)?
        .into_iter()
        .find(|h| h.order() == q)
        .ok_or_else(|| Error::Internal("Sylow subgroup missing".into()))
}

/// Abelian subgroups not properly contained in another abelian subgroup.
pub fn maximal_abelian_subgroups(g: &Arc<FinGroup>) -> Result<Vec<Subgroup>> {
    let ab: Vec<Subgroup> = all_subgroups(g)?.into_iter().filter(|h| h.is_abelian()).collect();
    Ok(ab
        .iter()
        .filter(|h| {
            let s = h.elements();
            !ab.iter().any(|k| k.order() > h.order() && s.is_subset(&k.elements()))
        })
        .cloned()
        .collect())
}

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            ps.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let c4 = cyclic(4).unwrap();
        assert_eq!((c4.order(), c4.exponent()), (4, 4));
        let k = klein().unwrap();
        assert_eq!((k.order(), k.exponent()), (4, 2));
        let m = modular16().unwrap();
        assert_eq!(m.order(), 16);
        let ts = m.parse_element("tau*sigma").unwrap();
        assert_eq!(m.element_order(ts), 8);
        assert_eq!(m.mul(ts, ts), m.parse_element("sigma^6").unwrap());
        assert_eq!(m.parse_element("tau*sigma*tau*sigma^3").unwrap(), m.identity());
        assert_eq!(ts, m.parse_element("sigma^5*tau").unwrap());
        assert!(builtin("nope", &[]).is_err());
    }

    #[test]
    fn words_evaluate() {
        for g in [cyclic(6).unwrap(), klein().unwrap(), modular16().unwrap()] {
            for a in 0..g.order() {
                assert_eq!(g.eval_word(g.word(a)), a);
                assert_eq!(g.parse_element(g.element_name(a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn subgroups_of_m16() {
        let m = Arc::new(modular16().unwrap());
        let s = m.parse_element("sigma").unwrap();
        let t = m.parse_element("tau").unwrap();
        let s2 = m.parse_element("sigma^2").unwrap();
        let g1 = subgroup_from_generators(&m, &[s]).unwrap();
        assert_eq!(g1.abelian_invariants().unwrap(), vec![Int::from(8)]);
        let g3 = subgroup_from_generators(&m, &[t, s2]).unwrap();
        assert_eq!(g3.abelian_invariants().unwrap(), vec![Int::from(2), Int::from(4)]);
        let triv = subgroup_from_generators(&m, &[]).unwrap();
        assert_eq!(triv.order(), 1);
        let ts = m.parse_element("tau*sigma").unwrap();
        let g2 = subgroup_from_generators(&m, &[ts]).unwrap();
        let maxab = maximal_abelian_subgroups(&m).unwrap();
        let sets: Vec<_> = maxab.iter().map(|h| h.elements()).collect();
        assert_eq!(sets.len(), 3);
        for h in [&g1, &g2, &g3] {
            assert!(sets.contains(&h.elements()));
        }
        for h in all_subgroups(&m).unwrap() {
            assert_eq!(16 % h.order(), 0);
        }
    }

    #[test]
    fn klein_subgroups_and_sylow() {
        let k = Arc::new(klein().unwrap());
        assert_eq!(all_subgroups(&k).unwrap().len(), 5);
        let c4 = Arc::new(cyclic(4).unwrap());
        assert_eq!(sylow(&c4, 2).unwrap().order(), 4);
        assert_eq!(sylow(&c4, 3).unwrap().order(), 1);
        let c6 = Arc::new(cyclic(6).unwrap());
        assert_eq!(sylow(&c6, 3).unwrap().order(), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FinGroup::from_table("bad", bad, vec![]).is_err());
    }
}
