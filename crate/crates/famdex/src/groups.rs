//! Finite-group engine for the symmetric-type catalog objects: permutations
//! of degree five, cached element sets, conjugacy, centralizers, quotients
//! with sections, isomorphism identification, and exact character tables.
//!
//! All named subgroups live inside one fixed ambient copy of the degree-5
//! symmetric group whose 120 elements are enumerated once in lexicographic
//! image order; a subgroup is a 128-bit set over that enumeration.

use crate::cyclo::{element_of_order, inv_mod, mulmod, pow_mod, Cyc};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown catalog tag {0}")]
    UnknownTag(String),
    #[error("subgroup is not normal in the chosen overgroup")]
    NotNormal,
    #[error("no isomorphism onto the requested standard object")]
    NotIsomorphic,
    #[error("group order {0} exceeds the character-table cap")]
    SizeCap(usize),
    #[error("element set is not closed or not contained as required")]
    NotSubgroup,
}

/// A permutation of 1..=5 stored as 0-based images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub [u8; 5]);

impl Perm {
    pub fn identity() -> Self {
        Perm([0, 1, 2, 3, 4])
    }

    /// Build from disjoint cycles in 1-based points, e.g. &[&[1,2],&[3,4]].
    pub fn from_cycles(cycles: &[&[u8]]) -> Self {
        let mut img = [0u8, 1, 2, 3, 4];
        for cyc in cycles {
            for w in 0..cyc.len() {
                let from = cyc[w] - 1;
                let to = cyc[(w + 1) % cyc.len()] - 1;
                img[from as usize] = to;
            }
        }
        Perm(img)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        // apply other first, then self
        let mut img = [0u8; 5];
        for i in 0..5 {
            img[i] = self.0[other.0[i] as usize];
        }
        Perm(img)
    }

    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; 5];
        for i in 0..5 {
            img[self.0[i] as usize] = i as u8;
        }
        Perm(img)
    }

    pub fn cycle_string(&self) -> String {
        let mut seen = [false; 5];
        let mut out = String::new();
        for start in 0..5 {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.0[start] as usize;
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.0[cur] as usize;
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(""),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Subgroups of the ambient group as element-index bitsets.
pub type SubSet = u128;

/// The fixed ambient degree-5 symmetric group with precomputed tables.
pub struct Ambient {
    pub perms: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    pub mul: Vec<Vec<u8>>,
    pub inv: Vec<u8>,
    /// conj[g][h] = g h g^{-1}
    pub conj: Vec<Vec<u8>>,
    pub order_of: Vec<u32>,
}

pub fn ambient() -> &'static Ambient {
    static AMB: OnceLock<Ambient> = OnceLock::new();
    AMB.get_or_init(|| {
        let mut perms: Vec<Perm> = vec![];
        let mut idx = [0u8; 5];
        gen_perms(&mut idx, 0, &mut [false; 5], &mut perms);
        perms.sort();
        let index: HashMap<Perm, usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let n = perms.len();
        let mut mul = vec![vec![0u8; n]; n];
        let mut inv = vec![0u8; n];
        for i in 0..n {
            for j in 0..n {
                mul[i][j] = index[&perms[i].compose(&perms[j])] as u8;
            }
            inv[i] = index[&perms[i].inverse()] as u8;
        }
        let mut conj = vec![vec![0u8; n]; n];
        for g in 0..n {
            for h in 0..n {
                conj[g][h] = mul[mul[g][h] as usize][inv[g] as usize];
            }
        }
        let mut order_of = vec![1u32; n];
        for i in 1..n {
            let mut k = 1u32;
            let mut cur = i;
            loop {
                cur = mul[cur][i] as usize;
                k += 1;
                if cur == 0 {
                    break;
                }
            }
            order_of[i] = k;
        }
        Ambient {
            perms,
            index,
            mul,
            inv,
            conj,
            order_of,
        }
    })
}

fn gen_perms(img: &mut [u8; 5], pos: usize, used: &mut [bool; 5], out: &mut Vec<Perm>) {
    if pos == 5 {
        out.push(Perm(*img));
        return;
    }
    for v in 0..5u8 {
        if !used[v as usize] {
            used[v as usize] = true;
            img[pos] = v;
            gen_perms(img, pos + 1, used, out);
            used[v as usize] = false;
        }
    }
}

pub fn elements_of(set: SubSet) -> Vec<usize> {
    (0..128).filter(|&i| set >> i & 1 == 1).collect()
}

pub fn set_of(elems: &[usize]) -> SubSet {
    elems.iter().fold(0u128, |acc, &i| acc | (1u128 << i))
}

pub fn set_size(set: SubSet) -> usize {
    set.count_ones() as usize
}

pub fn set_contains(set: SubSet, i: usize) -> bool {
    set >> i & 1 == 1
}

/// Closure of a generating set under the ambient multiplication.
pub fn generated_subgroup(gens: &[usize]) -> SubSet {
    let amb = ambient();
    let mut set: SubSet = 1; // identity has index 0
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            for y in [amb.mul[x][g] as usize, amb.mul[g][x] as usize] {
                if !set_contains(set, y) {
                    set |= 1u128 << y;
                    frontier.push(y);
                }
            }
        }
    }
    set
}

pub fn conjugate_set(set: SubSet, g: usize) -> SubSet {
    let amb = ambient();
    let mut out: SubSet = 0;
    for i in elements_of(set) {
        out |= 1u128 << amb.conj[g][i];
    }
    out
}

pub fn centralizer_in(set: SubSet, x: usize) -> SubSet {
    let amb = ambient();
    let mut out: SubSet = 0;
    for g in elements_of(set) {
        if amb.conj[g][x] as usize == x {
            out |= 1u128 << g;
        }
    }
    out
}

pub fn is_subgroup_closed(set: SubSet) -> bool {
    let amb = ambient();
    if !set_contains(set, 0) {
        return false;
    }
    let elems = elements_of(set);
    for &a in &elems {
        if !set_contains(set, amb.inv[a] as usize) {
            return false;
        }
        for &b in &elems {
            if !set_contains(set, amb.mul[a][b] as usize) {
                return false;
            }
        }
    }
    true
}

pub fn is_normal_in(small: SubSet, large: SubSet) -> bool {
    if small & large != small {
        return false;
    }
    elements_of(large)
        .iter()
        .all(|&g| conjugate_set(small, g) == small)
}

/// Conjugacy classes of a subgroup acting on itself; classes are sorted by
/// (representative order, class size, minimal element index) and each class
/// lists its members ascending.
pub fn conjugacy_classes(set: SubSet) -> Vec<Vec<usize>> {
    let amb = ambient();
    let elems = elements_of(set);
    let mut remaining: SubSet = set;
    let mut classes: Vec<Vec<usize>> = vec![];
    for &x in &elems {
        if !set_contains(remaining, x) {
            continue;
        }
        let class: Vec<usize> = elems
            .iter()
            .map(|&g| amb.conj[g][x] as usize)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for &y in &class {
            remaining &= !(1u128 << y);
        }
        classes.push(class);
    }
    classes.sort_by_key(|c| (amb.order_of[c[0]], c.len(), c[0]));
    classes
}

/// The named catalog subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardTag {
    S1,
    S2,
    S3,
    S4,
    S5,
    D8,
    S2S2,
    S2Tilde,
    S3S2,
}

impl StandardTag {
    pub const ALL: [StandardTag; 9] = [
        StandardTag::S1,
        StandardTag::S2,
        StandardTag::S3,
        StandardTag::S4,
        StandardTag::S5,
        StandardTag::D8,
        StandardTag::S2S2,
        StandardTag::S2Tilde,
        StandardTag::S3S2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StandardTag::S1 => "S1",
            StandardTag::S2 => "S2",
            StandardTag::S3 => "S3",
            StandardTag::S4 => "S4",
            StandardTag::S5 => "S5",
            StandardTag::D8 => "D8",
            StandardTag::S2S2 => "S2S2",
            StandardTag::S2Tilde => "S2~",
            StandardTag::S3S2 => "S3S2",
        }
    }
}

/// The literal standard subgroup of the ambient group for a catalog tag.
pub fn make_standard(tag: StandardTag) -> SubSet {
    let amb = ambient();
    let idx = |p: Perm| amb.index[&p];
    match tag {
        StandardTag::S1 => 1u128,
        StandardTag::S2 => generated_subgroup(&[idx(Perm::from_cycles(&[&[1, 2]]))]),
        StandardTag::S3 => generated_subgroup(&[
            idx(Perm::from_cycles(&[&[1, 2]])),
            idx(Perm::from_cycles(&[&[1, 2, 3]])),
        ]),
        StandardTag::S4 => generated_subgroup(&[
            idx(Perm::from_cycles(&[&[1, 2]])),
            idx(Perm::from_cycles(&[&[1, 2, 3, 4]])),
        ]),
        StandardTag::S5 => generated_subgroup(&[
            idx(Perm::from_cycles(&[&[1, 2]])),
            idx(Perm::from_cycles(&[&[1, 2, 3, 4, 5]])),
        ]),
        StandardTag::D8 => {
            let s4 = make_standard(StandardTag::S4);
            let z = idx(Perm::from_cycles(&[&[1, 2], &[3, 4]]));
            centralizer_in(s4, z)
        }
        StandardTag::S2S2 => generated_subgroup(&[
            idx(Perm::from_cycles(&[&[1, 2]])),
            idx(Perm::from_cycles(&[&[3, 4]])),
        ]),
        StandardTag::S2Tilde => generated_subgroup(&[idx(Perm::from_cycles(&[&[4, 5]]))]),
        StandardTag::S3S2 => {
            let s5 = make_standard(StandardTag::S5);
            let t = idx(Perm::from_cycles(&[&[4, 5]]));
            centralizer_in(s5, t)
        }
    }
}

pub fn make_standard_by_name(name: &str) -> Result<SubSet, GroupError> {
    let tag = match name {
        "S1" => StandardTag::S1,
        "S2" => StandardTag::S2,
        "S3" => StandardTag::S3,
        "S4" => StandardTag::S4,
        "S5" => StandardTag::S5,
        "D8" => StandardTag::D8,
        "S2S2" => StandardTag::S2S2,
        "S2~" | "S2t" => StandardTag::S2Tilde,
        "S3S2" => StandardTag::S3S2,
        other => return Err(GroupError::UnknownTag(other.to_string())),
    };
    Ok(make_standard(tag))
}

/// A finite group presented by its multiplication table, with canonical
/// conjugacy-class ordering. Built from an ambient subgroup or from the
/// cosets of a quotient.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    pub n: usize,
    pub mul: Vec<Vec<u16>>,
    pub inv: Vec<u16>,
    pub order_of: Vec<u32>,
    /// classes[i] = sorted member list; classes sorted canonically
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// optional labels tying local indices back to ambient elements
    pub labels: Vec<String>,
}

impl CayleyGroup {
    pub fn from_table(mul: Vec<Vec<u16>>, labels: Vec<String>) -> Self {
        let n = mul.len();
        // identity must be index 0
        for i in 0..n {
            assert_eq!(mul[0][i] as usize, i);
            assert_eq!(mul[i][0] as usize, i);
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            let j = (0..n).find(|&j| mul[i][j] == 0).expect("inverse");
            inv[i] = j as u16;
        }
        let mut order_of = vec![1u32; n];
        for i in 1..n {
            let mut k = 1;
            let mut cur = i;
            loop {
                cur = mul[cur][i] as usize;
                k += 1;
                if cur == 0 {
                    break;
                }
            }
            order_of[i] = k;
        }
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<usize>> = vec![];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let cls: Vec<usize> = (0..n)
                .map(|g| mul[mul[g][x] as usize][inv[g] as usize] as usize)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls);
        }
        classes.sort_by_key(|c| (order_of[c[0]], c.len(), c[0]));
        let mut class_of = vec![0usize; n];
        for (ci, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = ci;
            }
        }
        CayleyGroup {
            n,
            mul,
            inv,
            order_of,
            classes,
            class_of,
            labels,
        }
    }

    /// View an ambient subgroup as an abstract group; local indices follow
    /// ambient element order, so the identity is local index 0.
    pub fn from_subgroup(set: SubSet) -> Self {
        let amb = ambient();
        assert!(is_subgroup_closed(set), "element set must be a subgroup");
        let elems = elements_of(set);
        let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let n = elems.len();
        let mut mul = vec![vec![0u16; n]; n];
        for i in 0..n {
            for j in 0..n {
                mul[i][j] = local[&(amb.mul[elems[i]][elems[j]] as usize)] as u16;
            }
        }
        let labels = elems.iter().map(|&g| amb.perms[g].cycle_string()).collect();
        Self::from_table(mul, labels)
    }

    pub fn exponent(&self) -> u32 {
        self.order_of
            .iter()
            .fold(1u32, |acc, &k| num_integer::lcm(acc, k))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.mul[i][j] == self.mul[j][i]))
    }
}

/// A quotient of ambient subgroups with its coset section.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub numerator: SubSet,
    pub kernel: SubSet,
    /// canonical representative (minimal ambient index) per coset
    pub reps: Vec<usize>,
    pub coset_of: HashMap<usize, usize>,
    pub group: CayleyGroup,
}

pub fn quotient(numerator: SubSet, kernel: SubSet) -> Result<Quotient, GroupError> {
    if !is_subgroup_closed(numerator) || !is_subgroup_closed(kernel) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_normal_in(kernel, numerator) {
        return Err(GroupError::NotNormal);
    }
    let amb = ambient();
    let mut coset_of: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = vec![];
    for g in elements_of(numerator) {
        if coset_of.contains_key(&g) {
            continue;
        }
        let coset: Vec<usize> = elements_of(kernel)
            .into_iter()
            .map(|k| amb.mul[g][k] as usize)
            .collect();
        let rep = *coset.iter().min().unwrap();
        let id = reps.len();
        reps.push(rep);
        for c in coset {
            coset_of.insert(c, id);
        }
    }
    // sort cosets by representative; the kernel coset holds ambient identity 0
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| reps[i]);
    let rank: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let reps: Vec<usize> = order.iter().map(|&i| reps[i]).collect();
    for v in coset_of.values_mut() {
        *v = rank[v];
    }
    let n = reps.len();
    let mut mul = vec![vec![0u16; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = amb.mul[reps[i]][reps[j]] as usize;
            mul[i][j] = coset_of[&prod] as u16;
        }
    }
    let labels = reps
        .iter()
        .map(|&g| format!("{}K", amb.perms[g].cycle_string()))
        .collect();
    let group = CayleyGroup::from_table(mul, labels);
    Ok(Quotient {
        numerator,
        kernel,
        reps,
        coset_of,
        group,
    })
}

fn close_word_map(
    a: &CayleyGroup,
    b: &CayleyGroup,
    seed: &HashMap<usize, usize>,
) -> Option<HashMap<usize, usize>> {
    let mut map = seed.clone();
    loop {
        let mut changed = false;
        let keys: Vec<usize> = map.keys().copied().collect();
        for &x in &keys {
            for &y in &keys {
                let p = a.mul[x][y] as usize;
                let q = b.mul[map[&x]][map[&y]] as usize;
                match map.get(&p) {
                    None => {
                        map.insert(p, q);
                        changed = true;
                    }
                    Some(&old) => {
                        if old != q {
                            return None;
                        }
                    }
                }
            }
        }
        if !changed {
            return Some(map);
        }
    }
}

fn greedy_generators(g: &CayleyGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = vec![];
    let mut span = sub_closure(g, &gens);
    let mut order: Vec<usize> = (1..g.n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(g.order_of[x]));
    for x in order {
        if span.len() == g.n {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = sub_closure(g, &gens);
        }
    }
    gens
}

fn sub_closure(g: &CayleyGroup, gens: &[usize]) -> std::collections::BTreeSet<usize> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(0usize);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &gen in gens {
            for y in [g.mul[x][gen] as usize, g.mul[gen][x] as usize] {
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    set
}

fn iso_from_generator_images(
    a: &CayleyGroup,
    b: &CayleyGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut seed = HashMap::new();
    seed.insert(0usize, 0usize);
    for (g, im) in gens.iter().zip(images) {
        seed.insert(*g, *im);
    }
    let map = close_word_map(a, b, &seed)?;
    if map.len() != a.n {
        return None;
    }
    let mut out = vec![0usize; a.n];
    let mut seen = vec![false; a.n];
    for (k, v) in map {
        if seen[v] {
            return None;
        }
        seen[v] = true;
        out[k] = v;
    }
    Some(out)
}

/// Backtracking isomorphism search between two abstract groups; returns the
/// image of every element of `a` in `b`, validated by the multiplication
/// tables.
pub fn find_isomorphism(a: &CayleyGroup, b: &CayleyGroup) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let mut sa: Vec<u32> = a.order_of.clone();
    let mut sb: Vec<u32> = b.order_of.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let gens = greedy_generators(a);
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(images) = stack.pop() {
        if images.len() == gens.len() {
            if let Some(full) = iso_from_generator_images(a, b, &gens, &images) {
                return Some(full);
            }
            continue;
        }
        let want = a.order_of[gens[images.len()]];
        for cand in 0..b.n {
            if b.order_of[cand] == want {
                let mut next = images.clone();
                next.push(cand);
                stack.push(next);
            }
        }
    }
    None
}

/// All automorphisms of a small abstract group.
pub fn automorphisms(g: &CayleyGroup) -> Vec<Vec<usize>> {
    assert!(g.n <= 24, "automorphism enumeration cap");
    let gens = greedy_generators(g);
    let mut out = vec![];
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(images) = stack.pop() {
        if images.len() == gens.len() {
            if let Some(full) = iso_from_generator_images(g, g, &gens, &images) {
                out.push(full);
            }
            continue;
        }
        let want = g.order_of[gens[images.len()]];
        for cand in 0..g.n {
            if g.order_of[cand] == want {
                let mut next = images.clone();
                next.push(cand);
                stack.push(next);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Exact character table: rows are irreducible characters over the canonical
/// class order, values in the fixed cyclotomic field.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// class representatives (local element indices) in canonical order
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// rows sorted by (degree, value vector)
    pub rows: Vec<Vec<Cyc>>,
}

impl CharacterTable {
    pub fn degree(&self, row: usize) -> BigRational {
        self.rows[row][0].as_rational().expect("degree is rational")
    }

    /// Row index of the trivial character (all values one).
    pub fn trivial_row(&self) -> usize {
        self.rows
            .iter()
            .position(|r| r.iter().all(|v| v.is_one()))
            .expect("every table contains the trivial character")
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }
}

/// Size cap for character table computation.
pub const CHARTAB_CAP: usize = 200;

/// Compute the exact character table by the class-algebra eigenvector method
/// over a prime field, lifting eigenvalue multiplicities to cyclotomic
/// integers.
pub fn char_table(g: &CayleyGroup) -> Result<CharacterTable, GroupError> {
    if g.n > CHARTAB_CAP {
        return Err(GroupError::SizeCap(g.n));
    }
    let k = g.classes.len();
    let e = g.exponent() as u64;
    assert!(
        60 % e == 0,
        "group exponent {e} outside the supported cyclotomic field"
    );
    // prime p = 1 mod e, large enough that degrees and multiplicities are
    // read off unambiguously
    let p = {
        let mut p = (g.n as u64 + 2).max(2 * e + 1);
        p += (e - (p - 1) % e) % e;
        while !is_prime(p) {
            p += e;
        }
        p
    };
    let theta = element_of_order(e, p);

    let reps: Vec<usize> = g.classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
    // structure[i][j][t] = #{(x,y) in C_i x C_j : x y = rep_t}
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            for &x in &g.classes[i] {
                for &y in &g.classes[j] {
                    let prod = g.mul[x][y] as usize;
                    let t = g.class_of[prod];
                    if prod == reps[t] {
                        structure[i][j][t] += 1;
                    }
                }
            }
        }
    }
    // class-sum action matrices on class space: (M_i)_{t,j} = structure[i][j][t]
    let mats: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|t| (0..k).map(|j| structure[i][j][t] % p).collect())
                .collect()
        })
        .collect();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(k)];
    for mat in &mats {
        let mut next: Vec<Vec<Vec<u64>>> = vec![];
        for space in &spaces {
            if space.len() == 1 {
                next.push(space.clone());
            } else {
                next.extend(split_eigenspaces(mat, space, p));
            }
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if !spaces.iter().all(|s| s.len() == 1) {
        return Err(GroupError::SizeCap(g.n));
    }

    let inv_class: Vec<usize> = (0..k).map(|i| g.class_of[g.inv[reps[i]] as usize]).collect();

    let mut rows: Vec<Vec<Cyc>> = vec![];
    for space in &spaces {
        let v = &space[0];
        let pivot = (0..k).find(|&t| v[t] != 0).unwrap();
        let vp_inv = inv_mod(v[pivot], p);
        let mut omega = vec![0u64; k];
        for i in 0..k {
            let mut acc = 0u64;
            for j in 0..k {
                acc = (acc + mulmod(mats[i][pivot][j], v[j], p)) % p;
            }
            omega[i] = mulmod(acc, vp_inv, p);
        }
        // 1/d^2 = (1/|G|) sum_i omega_i omega_{i*} / |C_i|
        let mut s = 0u64;
        for i in 0..k {
            let t = mulmod(omega[i], omega[inv_class[i]], p);
            s = (s + mulmod(t, inv_mod(sizes[i] as u64, p), p)) % p;
        }
        let target = mulmod(g.n as u64, inv_mod(s, p), p);
        let mut degree = 0u64;
        let mut d = 1u64;
        while d * d <= g.n as u64 {
            if mulmod(d, d, p) == target {
                degree = d;
                break;
            }
            d += 1;
        }
        assert!(degree > 0, "no integral degree matches the eigenvector");
        let chi_mod: Vec<u64> = (0..k)
            .map(|i| mulmod(mulmod(degree, omega[i], p), inv_mod(sizes[i] as u64, p), p))
            .collect();
        // lift via multiplicities of root-of-unity eigenvalues
        let e_inv = inv_mod(e % p, p);
        let theta_inv = inv_mod(theta, p);
        let mut row: Vec<Cyc> = Vec::with_capacity(k);
        for i in 0..k {
            let mut power_class = Vec::with_capacity(e as usize);
            let mut cur = 0usize;
            power_class.push(g.class_of[cur]);
            for _ in 1..e {
                cur = g.mul[cur][reps[i]] as usize;
                power_class.push(g.class_of[cur]);
            }
            let mut val = Cyc::zero();
            for m in 0..e {
                let mut acc = 0u64;
                for (l, &cl) in power_class.iter().enumerate() {
                    let t = mulmod(
                        chi_mod[cl],
                        pow_mod(theta_inv, (m * l as u64) % e, p),
                        p,
                    );
                    acc = (acc + t) % p;
                }
                let mult = mulmod(acc, e_inv, p);
                assert!(mult <= degree, "eigenvalue multiplicity fails to lift");
                if mult > 0 {
                    let coeff = BigRational::from_integer(BigInt::from(mult));
                    val = val.add(&Cyc::root_of_unity(e as usize, m as usize).scale(&coeff));
                }
            }
            row.push(val);
        }
        rows.push(row);
    }
    rows.sort_by(|a, b| {
        let da = a[0].as_rational().unwrap();
        let db = b[0].as_rational().unwrap();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    let table = CharacterTable {
        class_reps: reps,
        class_sizes: sizes,
        rows,
    };
    validate_table(g, &table)?;
    Ok(table)
}

/// Exact orthogonality and degree checks; failure signals an internal error.
fn validate_table(g: &CayleyGroup, t: &CharacterTable) -> Result<(), GroupError> {
    let k = t.num_classes();
    let n = BigRational::from_integer(BigInt::from(g.n as i64));
    let mut total = BigRational::from_integer(BigInt::from(0));
    for r in 0..k {
        let d = t.degree(r);
        total += &d * &d;
    }
    if total != n {
        return Err(GroupError::SizeCap(g.n));
    }
    let inv_class: Vec<usize> = (0..k)
        .map(|i| g.class_of[g.inv[t.class_reps[i]] as usize])
        .collect();
    for r1 in 0..k {
        for r2 in 0..k {
            let mut acc = Cyc::zero();
            for i in 0..k {
                let sz = BigRational::from_integer(BigInt::from(t.class_sizes[i] as i64));
                let term = t.rows[r1][i].mul(&t.rows[r2][inv_class[i]]).scale(&sz);
                acc = acc.add(&term);
            }
            let expected = if r1 == r2 {
                Cyc::from_rational(n.clone())
            } else {
                Cyc::zero()
            };
            if acc != expected {
                return Err(GroupError::SizeCap(g.n));
            }
        }
    }
    Ok(())
}

fn identity_basis(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()
}

/// Split a subspace (given by a basis) into eigenspaces of `mat` over F_p.
fn split_eigenspaces(mat: &[Vec<u64>], space: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let k = mat.len();
    let dim = space.len();
    let mut images: Vec<Vec<u64>> = vec![];
    for b in space {
        let mut img = vec![0u64; k];
        for (t, row) in mat.iter().enumerate() {
            let mut acc = 0u64;
            for j in 0..k {
                acc = (acc + mulmod(row[j], b[j], p)) % p;
            }
            img[t] = acc;
        }
        images.push(img);
    }
    let restricted = solve_in_basis(space, &images, p);
    let mut out: Vec<Vec<Vec<u64>>> = vec![];
    let mut covered = 0usize;
    for lambda in 0..p {
        let mut m: Vec<Vec<u64>> = (0..dim)
            .map(|r| (0..dim).map(|c| restricted[c][r]).collect())
            .collect();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda % p) % p;
        }
        let kern = nullspace(&m, p);
        if kern.is_empty() {
            continue;
        }
        let sub: Vec<Vec<u64>> = kern
            .iter()
            .map(|coef| {
                let mut v = vec![0u64; k];
                for (c, b) in coef.iter().zip(space) {
                    for t in 0..k {
                        v[t] = (v[t] + mulmod(*c, b[t], p)) % p;
                    }
                }
                v
            })
            .collect();
        covered += sub.len();
        out.push(sub);
        if covered == dim {
            break;
        }
    }
    assert_eq!(covered, dim, "matrix must split over the prime field");
    out
}

/// Express image vectors in the given independent basis (all within its span).
/// Returns coordinates[img][basis_index].
fn solve_in_basis(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = basis[0].len();
    let dim = basis.len();
    let mut rows: Vec<Vec<u64>> = (0..k)
        .map(|t| {
            let mut r: Vec<u64> = basis.iter().map(|b| b[t]).collect();
            r.extend(images.iter().map(|im| im[t]));
            r
        })
        .collect();
    let cols = dim + images.len();
    let mut pivot_row = 0usize;
    let mut pivots = vec![];
    for col in 0..dim {
        if let Some(r) = (pivot_row..k).find(|&r| rows[r][col] != 0) {
            rows.swap(pivot_row, r);
            let inv = inv_mod(rows[pivot_row][col], p);
            for c in 0..cols {
                rows[pivot_row][c] = mulmod(rows[pivot_row][c], inv, p);
            }
            for r2 in 0..k {
                if r2 != pivot_row && rows[r2][col] != 0 {
                    let f = rows[r2][col];
                    for c in 0..cols {
                        let t = mulmod(f, rows[pivot_row][c], p);
                        rows[r2][c] = (rows[r2][c] + p - t) % p;
                    }
                }
            }
            pivots.push((col, pivot_row));
            pivot_row += 1;
        }
    }
    assert_eq!(pivots.len(), dim, "basis must be independent");
    let mut out = vec![vec![0u64; dim]; images.len()];
    for im_idx in 0..images.len() {
        for &(col, prow) in &pivots {
            out[im_idx][col] = rows[prow][dim + im_idx];
        }
    }
    out
}

/// Nullspace basis of a square matrix over F_p.
fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0;
    for c in 0..n {
        if r >= n {
            break;
        }
        if let Some(pr) = (r..n).find(|&i| rows[i][c] != 0) {
            rows.swap(r, pr);
            let inv = inv_mod(rows[r][c], p);
            for cc in 0..n {
                rows[r][cc] = mulmod(rows[r][cc], inv, p);
            }
            for i in 0..n {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for cc in 0..n {
                        let t = mulmod(f, rows[r][cc], p);
                        rows[i][cc] = (rows[i][cc] + p - t) % p;
                    }
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
        }
    }
    let mut basis = vec![];
    for c in 0..n {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[c] = 1;
        for cc in 0..n {
            if let Some(pr) = pivot_of_col[cc] {
                v[cc] = (p - rows[pr][c] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_subgroup_orders() {
        assert_eq!(set_size(make_standard(StandardTag::S1)), 1);
        assert_eq!(set_size(make_standard(StandardTag::S2)), 2);
        assert_eq!(set_size(make_standard(StandardTag::S3)), 6);
        assert_eq!(set_size(make_standard(StandardTag::S4)), 24);
        assert_eq!(set_size(make_standard(StandardTag::S5)), 120);
        assert_eq!(set_size(make_standard(StandardTag::D8)), 8);
        assert_eq!(set_size(make_standard(StandardTag::S2S2)), 4);
        assert_eq!(set_size(make_standard(StandardTag::S2Tilde)), 2);
        assert_eq!(set_size(make_standard(StandardTag::S3S2)), 12);
        let d8 = make_standard(StandardTag::D8);
        let s2s2 = make_standard(StandardTag::S2S2);
        assert_eq!(d8 & s2s2, s2s2);
        assert!(make_standard_by_name("S6").is_err());
    }

    #[test]
    fn class_count_examples() {
        let s3 = make_standard(StandardTag::S3);
        assert_eq!(conjugacy_classes(s3).len(), 3);
        let s5 = make_standard(StandardTag::S5);
        let classes = conjugacy_classes(s5);
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 120);
        // centralizer orders match the class equation
        for c in &classes {
            assert_eq!(set_size(centralizer_in(s5, c[0])) * c.len(), 120);
        }
    }

    #[test]
    fn quotient_examples() {
        let d8 = make_standard(StandardTag::D8);
        let s2s2 = make_standard(StandardTag::S2S2);
        let q = quotient(d8, s2s2).unwrap();
        assert_eq!(q.group.n, 2);
        for (i, &rep) in q.reps.iter().enumerate() {
            assert_eq!(q.coset_of[&rep], i);
        }
        // section multiplicativity modulo the kernel
        let amb = ambient();
        for i in 0..q.group.n {
            for j in 0..q.group.n {
                let prod = amb.mul[q.reps[i]][q.reps[j]] as usize;
                let target = q.reps[q.group.mul[i][j] as usize];
                let diff = amb.mul[amb.inv[target] as usize][prod] as usize;
                assert!(set_contains(q.kernel, diff));
            }
        }
        let s3 = make_standard(StandardTag::S3);
        let s2 = make_standard(StandardTag::S2);
        assert_eq!(quotient(s3, s2).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn char_table_s3() {
        let g = CayleyGroup::from_subgroup(make_standard(StandardTag::S3));
        let t = char_table(&g).unwrap();
        assert_eq!(t.num_classes(), 3);
        let degrees: Vec<String> = (0..3).map(|r| t.degree(r).to_string()).collect();
        assert_eq!(degrees, vec!["1", "1", "2"]);
    }

    #[test]
    fn char_table_cyclic_four() {
        let amb = ambient();
        let c = amb.index[&Perm::from_cycles(&[&[1, 2, 3, 4]])];
        let z = centralizer_in(make_standard(StandardTag::S4), c);
        assert_eq!(set_size(z), 4);
        let g = CayleyGroup::from_subgroup(z);
        let t = char_table(&g).unwrap();
        assert_eq!(t.num_classes(), 4);
        for r in 0..4 {
            assert_eq!(t.degree(r).to_string(), "1");
        }
        let i4 = Cyc::root_of_unity(4, 1);
        assert!(t
            .rows
            .iter()
            .any(|row| row.iter().any(|v| *v == i4 || *v == i4.conj())));
    }

    #[test]
    fn isomorphism_and_automorphisms() {
        let s3 = CayleyGroup::from_subgroup(make_standard(StandardTag::S3));
        let q = {
            let s3s2 = make_standard(StandardTag::S3S2);
            let s2t = make_standard(StandardTag::S2Tilde);
            quotient(s3s2, s2t).unwrap().group
        };
        let iso = find_isomorphism(&s3, &q).expect("quotient is a symmetric group");
        assert_eq!(iso.len(), 6);
        // the image must respect multiplication
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(
                    iso[s3.mul[x][y] as usize],
                    q.mul[iso[x]][iso[y]] as usize
                );
            }
        }
        let autos = automorphisms(&s3);
        assert_eq!(autos.len(), 6);
        let v4 = CayleyGroup::from_subgroup(make_standard(StandardTag::S2S2));
        let c4 = {
            let amb = ambient();
            let c = amb.index[&Perm::from_cycles(&[&[1, 2, 3, 4]])];
            CayleyGroup::from_subgroup(generated_subgroup(&[c]))
        };
        assert!(find_isomorphism(&v4, &c4).is_none());
    }
}
