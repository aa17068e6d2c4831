//! The pair space of a catalog object, the elements induced from the unit
//! pair of each quotient, the spanned sub-basis, the coefficient-one
//! bijection onto the pair collection, and the order relation it generates.
//!
//! Identifications used throughout: a pair (element, character of its
//! centralizer) of a vector-kind object is a single mask whose odd bits give
//! the element and whose even bits give the character through the pairing;
//! for symmetric kinds pairs are (conjugacy class, character-table row) of
//! the centralizer of the class representative.

use crate::cyclo::{element_of_order, mulmod, Cyc};
use crate::f2::{self, e, even_mask, symplectic, Mask, Subspace};
use crate::gammasets::{
    big_x_with, canon_perm_pair, perm_object_set, std_obj, AObject, BarReading, GammaError,
    PermPair, Variant, XConfig, XEntry, XPair,
};
use crate::groups::{
    ambient, char_table, conjugacy_classes, elements_of, quotient, set_contains, set_size,
    CayleyGroup, CharacterTable, SubSet,
};
use crate::inductive::{LinearMap, SubspacePair};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;
use std::sync::OnceLock;

/// Index of a basis pair of the pair space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MIndex {
    /// Vector kinds: odd bits = element, even bits = character.
    Mask(Mask),
    /// Symmetric kinds: conjugacy class and character-table row of the
    /// class representative's centralizer.
    Pair { class: usize, irrep: usize },
}

/// A finitely supported exact linear combination of basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVector {
    pub coeffs: BTreeMap<MIndex, Cyc>,
}

impl MVector {
    pub fn zero() -> Self {
        MVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, idx: MIndex, c: Cyc) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Cyc::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn support(&self) -> Vec<MIndex> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, idx: &MIndex) -> Cyc {
        self.coeffs.get(idx).cloned().unwrap_or_else(Cyc::zero)
    }

    /// All coefficients are non-negative rational integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.values().all(|c| {
            c.as_rational()
                .map(|r| r.is_integer() && !r.is_negative())
                .unwrap_or(false)
        })
    }
}

/// Pair-space data of an ambient subgroup: classes, centralizers and their
/// character tables.
pub struct PermMSet {
    pub gamma: SubSet,
    pub classes: Vec<Vec<usize>>,
    pub centralizers: Vec<SubSet>,
    pub cent_elems: Vec<Vec<usize>>,
    pub cent_groups: Vec<CayleyGroup>,
    pub tables: Vec<CharacterTable>,
    pub pairs: Vec<MIndex>,
}

static PERM_MSET: OnceLock<Mutex<HashMap<SubSet, &'static PermMSet>>> = OnceLock::new();

/// Pair-space data for a symmetric-kind catalog object.
pub fn perm_mset(obj: &AObject) -> &'static PermMSet {
    perm_mset_of(perm_object_set(obj))
}

/// Pair-space data for any ambient subgroup.
pub fn perm_mset_of(gamma: SubSet) -> &'static PermMSet {
    let cache = PERM_MSET.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(m) = guard.get(&gamma) {
        return m;
    }
    let classes = conjugacy_classes(gamma);
    let mut centralizers = vec![];
    let mut cent_elems = vec![];
    let mut cent_groups = vec![];
    let mut tables = vec![];
    let mut pairs = vec![];
    for (ci, class) in classes.iter().enumerate() {
        let z = crate::groups::centralizer_in(gamma, class[0]);
        let elems = elements_of(z);
        let g = CayleyGroup::from_subgroup(z);
        let t = char_table(&g).expect("centralizer table");
        for irrep in 0..t.rows.len() {
            pairs.push(MIndex::Pair { class: ci, irrep });
        }
        centralizers.push(z);
        cent_elems.push(elems);
        cent_groups.push(g);
        tables.push(t);
    }
    let boxed: &'static PermMSet = Box::leak(Box::new(PermMSet {
        gamma,
        classes,
        centralizers,
        cent_elems,
        cent_groups,
        tables,
        pairs,
    }));
    guard.insert(gamma, boxed);
    boxed
}

/// The basis pair carrying the unit element and the unit character.
pub fn unit_index(obj: &AObject) -> MIndex {
    if obj.is_vector_kind() {
        MIndex::Mask(0)
    } else {
        let ms = perm_mset(obj);
        MIndex::Pair {
            class: 0,
            irrep: ms.tables[0].trivial_row(),
        }
    }
}

/// The full pair space of an object, in canonical order.
pub fn m_set(obj: &AObject) -> Vec<MIndex> {
    if obj.is_vector_kind() {
        let d_bits = match *obj {
            AObject::Vd1(d) => d,
            AObject::VprimeD1(d) => d - 1,
            _ => unreachable!(),
        };
        (0..(1u64 << d_bits)).map(MIndex::Mask).collect()
    } else {
        perm_mset(obj).pairs.clone()
    }
}

/// Fault-injection switch for the induction formula; `Standard` is the
/// shipped behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SsVariant {
    #[default]
    Standard,
    /// normalize the lift by the ambient order instead of the overgroup order
    LiftOverGroupOrder,
    /// normalize the conversion by the group order instead of the centralizer
    ConvertOverGroupOrder,
    /// restrict the lifted second coordinate to the small subgroup
    MembershipInSmall,
}

/// The element induced from the unit pair of the quotient of a literal
/// subgroup pair inside any ambient subgroup.
pub fn rho_perm_with(variant: SsVariant, gamma: SubSet, small: SubSet, large: SubSet) -> MVector {
    let amb = ambient();
    let ms = perm_mset_of(gamma);
    let gamma_elems = elements_of(ms.gamma);
    let b_order = set_size(large) as i64;
    let lift_den = match variant {
        SsVariant::LiftOverGroupOrder => gamma_elems.len() as i64,
        _ => b_order,
    };
    let mut out = MVector::zero();
    for (ci, class) in ms.classes.iter().enumerate() {
        let x = class[0];
        let z_elems = &ms.cent_elems[ci];
        // f(x, g) = (1 / lift_den) #{h : h x h^-1 in small, h g h^-1 in large}
        let mut f_vals: Vec<BigRational> = Vec::with_capacity(z_elems.len());
        for &g in z_elems {
            let mut count = 0i64;
            for &h in &gamma_elems {
                let hx = amb.conj[h][x] as usize;
                if !set_contains(small, hx) {
                    continue;
                }
                let hg = amb.conj[h][g] as usize;
                let target = match variant {
                    SsVariant::MembershipInSmall => small,
                    _ => large,
                };
                if set_contains(target, hg) {
                    count += 1;
                }
            }
            f_vals.push(BigRational::new(BigInt::from(count), BigInt::from(lift_den)));
        }
        // c(x, sigma) = (1/|Z(x)|) sum_g f(x,g) sigma(g^-1)
        let table = &ms.tables[ci];
        let zg = &ms.cent_groups[ci];
        let convert_den = match variant {
            SsVariant::ConvertOverGroupOrder => gamma_elems.len() as i64,
            _ => z_elems.len() as i64,
        };
        let den = BigRational::new(BigInt::one(), BigInt::from(convert_den));
        for (irrep, row) in table.rows.iter().enumerate() {
            let mut acc = Cyc::zero();
            for (gl, f) in f_vals.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let g_inv_local = zg.inv[gl] as usize;
                let val = &row[zg.class_of[g_inv_local]];
                acc = acc.add(&val.scale(f));
            }
            let c = acc.scale(&den);
            out.add_term(MIndex::Pair { class: ci, irrep }, c);
        }
    }
    out
}

/// Annihilator of a subspace inside the even-index coordinate part.
fn even_annihilator(obj: &AObject, large: &Subspace) -> Subspace {
    let even = match *obj {
        AObject::Vd1(d) => even_mask(d),
        AObject::VprimeD1(d) => even_mask(d - 1),
        _ => unreachable!(),
    };
    let axes = f2::support(even);
    let mut out = Subspace::zero();
    // solve (w, row) = 0 over the even axes
    let rows: Vec<Mask> = large.rows().to_vec();
    let n = axes.len();
    let mut pivot_rows: Vec<(Vec<u8>, Vec<bool>)> = vec![];
    let mut null_tags: Vec<Vec<bool>> = vec![];
    for i in 0..n {
        let w = e(axes[i]);
        let mut col: Vec<u8> = rows.iter().map(|&r| symplectic(w, r)).collect();
        let mut tag = vec![false; n];
        tag[i] = true;
        for (prow, ptag) in &pivot_rows {
            if let Some(p) = prow.iter().position(|&v| v == 1) {
                if col[p] == 1 {
                    for (a, b) in col.iter_mut().zip(prow) {
                        *a ^= b;
                    }
                    for (a, b) in tag.iter_mut().zip(ptag) {
                        *a ^= b;
                    }
                }
            }
        }
        if col.iter().all(|&v| v == 0) {
            null_tags.push(tag);
        } else {
            pivot_rows.push((col, tag));
        }
    }
    for tag in null_tags {
        let mut v = 0;
        for (i, &c) in tag.iter().enumerate() {
            if c {
                v ^= e(axes[i]);
            }
        }
        out.insert(v);
    }
    out
}

/// The induced element of a vector-kind pair: the indicator of the subspace
/// generated by the small member and the even annihilator of the large one.
pub fn rho_linear(obj: &AObject, pair: &SubspacePair) -> MVector {
    let ann = even_annihilator(obj, &pair.large);
    let total = pair.small.sum(&ann);
    let mut out = MVector::zero();
    for m in total.elements() {
        out.add_term(MIndex::Mask(m), Cyc::one());
    }
    out
}

type RhoKey = (AObject, XPair);

fn rho_memo() -> &'static Mutex<HashMap<RhoKey, MVector>> {
    static MEMO: OnceLock<Mutex<HashMap<RhoKey, MVector>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The induced element of any pair of the collection.
pub fn rho(obj: &AObject, pair: &XPair) -> MVector {
    let key = (*obj, pair.clone());
    if let Some(v) = rho_memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = rho_with(SsVariant::Standard, obj, pair);
    rho_memo().lock().unwrap().insert(key, v.clone());
    v
}

pub fn rho_with(variant: SsVariant, obj: &AObject, pair: &XPair) -> MVector {
    match pair {
        XPair::Linear(p) => {
            assert_eq!(
                variant,
                SsVariant::Standard,
                "fault injection targets the symmetric-kind formula"
            );
            rho_linear(obj, p)
        }
        XPair::Perm(p) => rho_perm_with(variant, perm_object_set(obj), p.small, p.large),
    }
}

/// General induction through a seed pair: carry a basis pair of the
/// standard quotient object up to the ambient object.
pub fn ss_induce(
    obj: &AObject,
    entry: &XEntry,
    source: &MIndex,
) -> Result<MVector, GammaError> {
    if obj.is_vector_kind() {
        let (_, large, map) = entry.linear.as_ref().expect("vector-kind entry");
        let MIndex::Mask(src) = source else {
            return Err(GammaError::BadObject("source kind mismatch".into()));
        };
        Ok(ss_induce_linear(obj, large, map, *src))
    } else {
        let small = entry.small_set.expect("symmetric-kind entry");
        let large = entry.large_set.expect("symmetric-kind entry");
        let q = quotient(large, small)?;
        let iso = crate::gammasets::identify_quotient(&q, &entry.quotient)?;
        let MIndex::Pair { class, irrep } = source else {
            return Err(GammaError::BadObject("source kind mismatch".into()));
        };
        Ok(ss_induce_perm(obj, small, large, &q, &iso, &entry.quotient, *class, *irrep))
    }
}

/// Vector-kind induction of a general basis pair. The image is supported on
/// masks whose odd part lies in the fiber of the source's odd part and whose
/// even part restricts on the overgroup to the transported character.
fn ss_induce_linear(obj: &AObject, large: &Subspace, map: &LinearMap, src: Mask) -> MVector {
    let even = even_src(obj);
    let src_odd = src & !even;
    let src_even = src & even;
    let mut out = MVector::zero();
    // odd parts: members of the domain mapping onto the source odd part
    let mut xs: Vec<Mask> = vec![];
    for v in map.domain().elements() {
        if map.apply(v) == src_odd {
            xs.push(v);
        }
    }
    if xs.is_empty() {
        return out;
    }
    // even parts: characters of the object restricting on the overgroup to
    // the pullback of the source character
    let large_rows: Vec<Mask> = large.rows().to_vec();
    let even_axes = f2::support(even);
    let k = even_axes.len();
    let mut ws: Vec<Mask> = vec![];
    for bits in 0..(1u64 << k) {
        let mut w = 0u64;
        for (i, &a) in even_axes.iter().enumerate() {
            if bits >> i & 1 == 1 {
                w |= e(a);
            }
        }
        if large_rows
            .iter()
            .all(|&g| symplectic(w, g) == symplectic(src_even, map.apply(g)))
        {
            ws.push(w);
        }
    }
    for &x in &xs {
        for &w in &ws {
            out.add_term(MIndex::Mask(x | w), Cyc::one());
        }
    }
    out
}

fn even_src(obj: &AObject) -> Mask {
    match *obj {
        AObject::Vd1(d) => even_mask(d),
        AObject::VprimeD1(d) => even_mask(d - 1),
        _ => unreachable!(),
    }
}

/// Symmetric-kind induction of a general basis pair of the standard
/// quotient object.
#[allow(clippy::too_many_arguments)]
fn ss_induce_perm(
    obj: &AObject,
    _small: SubSet,
    large: SubSet,
    q: &crate::groups::Quotient,
    iso: &[usize],
    tag: &AObject,
    src_class: usize,
    src_irrep: usize,
) -> MVector {
    let amb = ambient();
    let ms = perm_mset(obj);
    let std = std_obj(tag);
    let std_ms = perm_mset(tag);
    // inverse of the identification: quotient coset -> standard local index
    let mut iso_inv = vec![usize::MAX; iso.len()];
    for (std_local, &coset) in iso.iter().enumerate() {
        iso_inv[coset] = std_local;
    }
    // f-bar evaluated on commuting pairs of the quotient via the standard object
    let fbar = |coset_y: usize, coset_g: usize| -> Cyc {
        let y = std.elems[iso_inv[coset_y]];
        let g = std.elems[iso_inv[coset_g]];
        // class of y within the standard object
        let class = std_ms
            .classes
            .iter()
            .position(|c| c.contains(&y))
            .expect("class");
        if class != src_class {
            return Cyc::zero();
        }
        let x = std_ms.classes[class][0];
        // conjugator k with k y k^-1 = x inside the standard object
        let k = elements_of(std.set)
            .into_iter()
            .find(|&k| amb.conj[k][y] as usize == x)
            .expect("conjugator");
        let kg = amb.conj[k][g] as usize;
        let local = std_ms.cent_elems[class]
            .iter()
            .position(|&z| z == kg)
            .expect("centralizer member");
        let zg = &std_ms.cent_groups[class];
        std_ms.tables[class].rows[src_irrep][zg.class_of[local]].clone()
    };
    let gamma_elems = elements_of(ms.gamma);
    let lift_den = BigRational::new(BigInt::one(), BigInt::from(set_size(large) as i64));
    let mut out = MVector::zero();
    for (ci, class) in ms.classes.iter().enumerate() {
        let x = class[0];
        let z_elems = &ms.cent_elems[ci];
        let mut f_vals: Vec<Cyc> = Vec::with_capacity(z_elems.len());
        for &g in z_elems {
            let mut acc = Cyc::zero();
            for &h in &gamma_elems {
                let hx = amb.conj[h][x] as usize;
                let hg = amb.conj[h][g] as usize;
                if set_contains(large, hx) && set_contains(large, hg) {
                    acc = acc.add(&fbar(q.coset_of[&hx], q.coset_of[&hg]));
                }
            }
            f_vals.push(acc.scale(&lift_den));
        }
        let table = &ms.tables[ci];
        let zg = &ms.cent_groups[ci];
        let den = BigRational::new(BigInt::one(), BigInt::from(z_elems.len() as i64));
        for (irrep, row) in table.rows.iter().enumerate() {
            let mut acc = Cyc::zero();
            for (gl, f) in f_vals.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let g_inv_local = zg.inv[gl] as usize;
                acc = acc.add(&f.mul(&row[zg.class_of[g_inv_local]]));
            }
            out.add_term(MIndex::Pair { class: ci, irrep }, acc.scale(&den));
        }
    }
    out
}

/// All induced elements over a collection variant, in collection order.
pub fn rho_family(obj: &AObject, variant: Variant, reading: BarReading) -> Vec<(XPair, MVector)> {
    let cfg = XConfig {
        bar_reading: reading,
        ..XConfig::default()
    };
    rho_family_with(SsVariant::Standard, &cfg, obj, variant)
}

pub fn rho_family_with(
    ss: SsVariant,
    cfg: &XConfig,
    obj: &AObject,
    variant: Variant,
) -> Vec<(XPair, MVector)> {
    big_x_with(cfg, obj, variant)
        .into_iter()
        .map(|p| {
            let r = if ss == SsVariant::Standard && cfg.twist.is_empty() {
                rho(obj, &p)
            } else {
                rho_with(ss, obj, &p)
            };
            (p, r)
        })
        .collect()
}

/// Union of the supports of the induced family.
pub fn m_zero(obj: &AObject) -> Vec<MIndex> {
    let fam = rho_family(obj, Variant::Plain, BarReading::S2);
    let mut set: BTreeSet<MIndex> = BTreeSet::new();
    for (_, v) in &fam {
        set.extend(v.support());
    }
    set.into_iter().collect()
}

/// Everything the induced-basis theorem asserts about one object, computed
/// exactly: sizes, linear independence, the coefficient-one bijection and
/// its uniqueness, and coefficient integrality.
#[derive(Debug, Clone)]
pub struct BasisReport {
    pub obj: AObject,
    pub variant: Variant,
    pub x_size: usize,
    pub m_zero_size: usize,
    pub independent: bool,
    pub integral: bool,
    /// for each support element index, the matched collection index
    pub bijection: Option<Vec<usize>>,
    pub bijection_unique: bool,
    pub pairs: Vec<XPair>,
    pub support: Vec<MIndex>,
}

pub fn basis_report(obj: &AObject, variant: Variant) -> BasisReport {
    basis_report_with(SsVariant::Standard, &XConfig::default(), obj, variant)
}

pub fn basis_report_with(
    ss: SsVariant,
    cfg: &XConfig,
    obj: &AObject,
    variant: Variant,
) -> BasisReport {
    let fam = rho_family_with(ss, cfg, obj, variant);
    let mut support: BTreeSet<MIndex> = BTreeSet::new();
    for (_, v) in &fam {
        support.extend(v.support());
    }
    let support: Vec<MIndex> = support.into_iter().collect();
    let col: HashMap<MIndex, usize> = support.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let integral = fam.iter().all(|(_, v)| v.is_nonneg_integral());
    // exact rank: full-rank certificate over a prime field, exact
    // elimination over the cyclotomic field as fallback
    let rows: Vec<Vec<Cyc>> = fam
        .iter()
        .map(|(_, v)| {
            let mut row = vec![Cyc::zero(); support.len()];
            for (idx, c) in &v.coeffs {
                row[col[idx]] = c.clone();
            }
            row
        })
        .collect();
    let independent = cyc_rows_independent(&rows);
    // coefficient-one bipartite matching
    let one = Cyc::one();
    let adj: Vec<Vec<usize>> = support
        .iter()
        .map(|m| {
            fam.iter()
                .enumerate()
                .filter(|(_, (_, v))| v.coeff(m) == one)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let (matching, unique) = unique_perfect_matching(&adj, fam.len());
    BasisReport {
        obj: *obj,
        variant,
        x_size: fam.len(),
        m_zero_size: support.len(),
        independent,
        integral,
        bijection: matching,
        bijection_unique: unique,
        pairs: fam.into_iter().map(|(p, _)| p).collect(),
        support,
    }
}

/// Exact linear independence of cyclotomic rows: a full-rank image modulo a
/// prime splitting the field certifies independence; otherwise fall back to
/// exact field elimination.
pub fn cyc_rows_independent(rows: &[Vec<Cyc>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let p: u64 = 541; // 1 mod 60, above every denominator prime
    let theta = element_of_order(60, p);
    let modular: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.eval_mod(theta, p)).collect())
        .collect();
    if rank_mod_p(&modular, p) == rows.len() {
        return true;
    }
    exact_cyc_rank(rows) == rows.len()
}

fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let ncols = work[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < work.len() && col < ncols {
        if let Some(r) = (rank..work.len()).find(|&r| work[r][col] != 0) {
            work.swap(rank, r);
            let inv = crate::cyclo::inv_mod(work[rank][col], p);
            for c in col..ncols {
                work[rank][c] = mulmod(work[rank][c], inv, p);
            }
            for r2 in 0..work.len() {
                if r2 != rank && work[r2][col] != 0 {
                    let f = work[r2][col];
                    for c in col..ncols {
                        let t = mulmod(f, work[rank][c], p);
                        work[r2][c] = (work[r2][c] + p - t) % p;
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

fn exact_cyc_rank(rows: &[Vec<Cyc>]) -> usize {
    let mut work: Vec<Vec<Cyc>> = rows.to_vec();
    let ncols = work[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < work.len() && col < ncols {
        if let Some(r) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) {
            work.swap(rank, r);
            let inv = work[rank][col].inverse();
            for c in col..ncols {
                work[rank][c] = work[rank][c].mul(&inv);
            }
            for r2 in 0..work.len() {
                if r2 != rank && !work[r2][col].is_zero() {
                    let f = work[r2][col].clone();
                    for c in col..ncols {
                        let t = f.mul(&work[rank][c]);
                        work[r2][c] = work[r2][c].sub(&t);
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// Perfect matching in a bipartite graph by augmenting paths, plus a
/// uniqueness certificate (no alternating cycle).
pub fn unique_perfect_matching(adj: &[Vec<usize>], nright: usize) -> (Option<Vec<usize>>, bool) {
    let nleft = adj.len();
    if nleft != nright {
        return (None, false);
    }
    let mut match_left: Vec<Option<usize>> = vec![None; nleft];
    let mut match_right: Vec<Option<usize>> = vec![None; nright];
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if match_right[r].is_none()
                || augment(match_right[r].unwrap(), adj, match_left, match_right, visited)
            {
                match_left[l] = Some(r);
                match_right[r] = Some(l);
                return true;
            }
        }
        false
    }
    for l in 0..nleft {
        let mut visited = vec![false; nright];
        if !augment(l, adj, &mut match_left, &mut match_right, &mut visited) {
            return (None, false);
        }
    }
    let matching: Vec<usize> = match_left.iter().map(|m| m.unwrap()).collect();
    // uniqueness: direct the matched edges right-to-left, others
    // left-to-right; an alternating cycle is a directed cycle
    // nodes: left 0..nleft, right nleft..nleft+nright
    let mut dig: Vec<Vec<usize>> = vec![vec![]; nleft + nright];
    for (l, rs) in adj.iter().enumerate() {
        for &r in rs {
            if matching[l] == r {
                dig[nleft + r].push(l);
            } else {
                dig[l].push(nleft + r);
            }
        }
    }
    let mut state = vec![0u8; nleft + nright];
    fn has_cycle(v: usize, dig: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &dig[v] {
            match state[w] {
                0 => {
                    if has_cycle(w, dig, state) {
                        return true;
                    }
                }
                1 => return true,
                _ => {}
            }
        }
        state[v] = 2;
        false
    }
    let mut unique = true;
    for v in 0..nleft + nright {
        if state[v] == 0 && has_cycle(v, dig.as_slice(), &mut state) {
            unique = false;
            break;
        }
    }
    (Some(matching), unique)
}

/// The order relation generated by support containment along the bijection.
#[derive(Debug, Clone)]
pub struct OrderReport {
    pub obj: AObject,
    pub antisymmetric: bool,
    pub reflexive: bool,
    /// covering edges (lower support index, upper support index)
    pub covers: Vec<(usize, usize)>,
    pub support: Vec<MIndex>,
}

pub fn order_report(obj: &AObject) -> Result<OrderReport, GammaError> {
    let report = basis_report(obj, Variant::Plain);
    let Some(bij) = report.bijection.clone() else {
        return Err(GammaError::BadObject(format!(
            "{obj}: no coefficient-one bijection, order undefined"
        )));
    };
    let n = report.m_zero_size;
    let col: HashMap<MIndex, usize> = report
        .support
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let fam = rho_family(obj, Variant::Plain, BarReading::S2);
    let mut rel = vec![vec![false; n]; n];
    for (i, _) in report.support.iter().enumerate() {
        let pair_idx = bij[i];
        let (_, v) = &fam[pair_idx];
        for m in v.support() {
            rel[col[&m]][i] = true;
        }
        rel[i][i] = true;
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let mut antisymmetric = true;
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                antisymmetric = false;
            }
        }
    }
    let reflexive = (0..n).all(|i| rel[i][i]);
    let mut covers = vec![];
    if antisymmetric {
        for i in 0..n {
            for j in 0..n {
                if i == j || !rel[i][j] {
                    continue;
                }
                let direct = !(0..n).any(|w| w != i && w != j && rel[i][w] && rel[w][j]);
                if direct {
                    covers.push((i, j));
                }
            }
        }
    }
    Ok(OrderReport {
        obj: *obj,
        antisymmetric,
        reflexive,
        covers,
        support: report.support,
    })
}

/// Render a pair-space index for reports.
pub fn m_index_name(obj: &AObject, idx: &MIndex) -> String {
    match idx {
        MIndex::Mask(m) => {
            let support = f2::support(*m);
            format!(
                "[{}]",
                support
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
        MIndex::Pair { class, irrep } => {
            let ms = perm_mset(obj);
            let amb = ambient();
            let x = ms.classes[*class][0];
            format!("({}, chi{})", amb.perms[x].cycle_string(), irrep)
        }
    }
}

/// Canonical pair of a literal symmetric subgroup pair (for callers holding
/// literal subgroups).
pub fn perm_pair(obj: &AObject, small: SubSet, large: SubSet) -> PermPair {
    canon_perm_pair(perm_object_set(obj), small, large)
}
