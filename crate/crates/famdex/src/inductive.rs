//! Inductive constructions: the contraction maps between bounded spaces and
//! their odd-part and quotient variants, the enumerations of the subspace
//! family and of the nested-pair collection they index, and the bijections
//! relating them.

use crate::f2::{
    self, e, e_interval, epsilon, eta, even_mask, interval_basis_of, max_index, odd_mask,
    vprime_rep, F2Error, Mask, Subspace,
};
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// A linear map given by an ordered domain basis and the images of its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain_basis: Vec<Mask>,
    images: Vec<Mask>,
    domain: Subspace,
}

impl LinearMap {
    pub fn new(domain_basis: Vec<Mask>, images: Vec<Mask>) -> Self {
        assert_eq!(domain_basis.len(), images.len());
        let domain = Subspace::from_vectors(domain_basis.iter().copied());
        assert_eq!(
            domain.dim(),
            domain_basis.len(),
            "domain basis must be independent"
        );
        LinearMap {
            domain_basis,
            images,
            domain,
        }
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn domain_basis(&self) -> &[Mask] {
        &self.domain_basis
    }

    pub fn images(&self) -> &[Mask] {
        &self.images
    }

    /// Apply to a member of the domain.
    pub fn apply(&self, v: Mask) -> Mask {
        let coords = self.coordinates(v).expect("vector outside domain");
        let mut out = 0;
        for (i, &c) in coords.iter().enumerate() {
            if c {
                out ^= self.images[i];
            }
        }
        out
    }

    /// Express v in the stored domain basis.
    fn coordinates(&self, v: Mask) -> Option<Vec<bool>> {
        // Gaussian elimination over the stored basis each call; domains are tiny.
        let n = self.domain_basis.len();
        let mut rows: Vec<(Mask, Vec<bool>)> = self
            .domain_basis
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut tag = vec![false; n];
                tag[i] = true;
                (b, tag)
            })
            .collect();
        // forward eliminate
        let mut reduced: Vec<(Mask, Vec<bool>)> = vec![];
        for (mut m, mut tag) in rows.drain(..) {
            for (rm, rtag) in &reduced {
                let pivot = rm & rm.wrapping_neg();
                if m & pivot != 0 {
                    m ^= rm;
                    for (t, rt) in tag.iter_mut().zip(rtag) {
                        *t ^= rt;
                    }
                }
            }
            if m != 0 {
                reduced.push((m, tag));
            }
        }
        let mut v = v;
        let mut coords = vec![false; n];
        for (rm, rtag) in &reduced {
            let pivot = rm & rm.wrapping_neg();
            if v & pivot != 0 {
                v ^= rm;
                for (c, rt) in coords.iter_mut().zip(rtag) {
                    *c ^= rt;
                }
            }
        }
        if v == 0 {
            Some(coords)
        } else {
            None
        }
    }

    pub fn kernel(&self) -> Subspace {
        self.preimage(&Subspace::zero())
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.images.iter().copied())
    }

    /// Full preimage of a subspace of the codomain, canonicalized.
    pub fn preimage(&self, target: &Subspace) -> Subspace {
        // kernel of (reduce image mod target) over domain coordinates
        let n = self.domain_basis.len();
        let cols: Vec<Mask> = self.images.iter().map(|&u| target.reduce(u)).collect();
        // nullspace of the map c -> sum c_i cols_i
        let mut pivot_rows: Vec<(Mask, Vec<bool>)> = vec![];
        let mut null_basis: Vec<Vec<bool>> = vec![];
        for i in 0..n {
            let mut m = cols[i];
            let mut tag = vec![false; n];
            tag[i] = true;
            for (rm, rtag) in &pivot_rows {
                let pivot = rm & rm.wrapping_neg();
                if m & pivot != 0 {
                    m ^= rm;
                    for (t, rt) in tag.iter_mut().zip(rtag) {
                        *t ^= rt;
                    }
                }
            }
            if m == 0 {
                null_basis.push(tag);
            } else {
                pivot_rows.push((m, tag));
            }
        }
        let mut pre = Subspace::zero();
        for tag in null_basis {
            let mut v = 0;
            for (i, &c) in tag.iter().enumerate() {
                if c {
                    v ^= self.domain_basis[i];
                }
            }
            pre.insert(v);
        }
        pre
    }
}

fn check_bound(d: u32) -> Result<(), F2Error> {
    if d > f2::MAX_BOUND {
        Err(F2Error::BoundTooLarge(d))
    } else {
        Ok(())
    }
}

/// The ordered auxiliary basis of the contraction domain: the distinguished
/// kernel vector first, then the listed spanning vectors in written order.
fn cmap_basis(d: u32, j: u32) -> (Vec<Mask>, Vec<Mask>) {
    let mut basis = vec![e(j)];
    let mut star: Vec<Mask> = vec![];
    if j == 1 {
        for i in 3..=d {
            star.push(e(i));
        }
    } else if j < d {
        for i in 1..=j.saturating_sub(2) {
            star.push(e(i));
        }
        star.push(e_interval(j - 1, j + 1));
        for i in j + 2..=d {
            star.push(e(i));
        }
    } else {
        for i in 1..=d - 2 {
            star.push(e(i));
        }
    }
    let images: Vec<Mask> = std::iter::once(0)
        .chain((1..=d - 2).map(e))
        .collect();
    basis.extend(star);
    (basis, images)
}

/// Contraction map on the full bounded space, killing e_j.
pub fn cmap(d: u32, j: u32) -> Result<LinearMap, F2Error> {
    check_bound(d)?;
    if d < 2 || j == 0 || j > d {
        return Err(F2Error::BadIndex(j));
    }
    let (basis, images) = cmap_basis(d, j);
    Ok(LinearMap::new(basis, images))
}

/// Restriction of the contraction to odd-index parts.
pub fn cmap1(d: u32, j: u32) -> Result<LinearMap, F2Error> {
    check_bound(d)?;
    if d < 2 || j == 0 || j > d {
        return Err(F2Error::BadIndex(j));
    }
    let d_minus = if d % 2 == 1 { d } else { d - 1 };
    let codomain_top = d_minus.saturating_sub(2);
    let mut basis: Vec<Mask> = vec![];
    let mut images: Vec<Mask> = vec![];
    if j % 2 == 1 {
        // domain is the whole odd part
        basis.push(e(j));
        images.push(0);
        let mut sources: Vec<Mask> = vec![];
        let mut i = 1;
        while i <= j.saturating_sub(2) {
            sources.push(e(i));
            i += 2;
        }
        let mut i = j + 2;
        while i <= d_minus {
            sources.push(e(i));
            i += 2;
        }
        let mut t = 1;
        for s in sources {
            basis.push(s);
            images.push(e(t));
            t += 2;
        }
        debug_assert!(t.saturating_sub(2) == codomain_top || codomain_top == 0);
    } else {
        // domain is the listed proper subspace of the odd part
        let mut sources: Vec<Mask> = vec![];
        if j < d {
            let mut i = 1;
            while i + 2 <= j {
                sources.push(e(i));
                i += 2;
            }
            sources.push(e(j - 1) ^ e(j + 1));
            let mut i = j + 3;
            while i <= d_minus {
                sources.push(e(i));
                i += 2;
            }
        } else {
            let mut i = 1;
            while i <= codomain_top {
                sources.push(e(i));
                i += 2;
            }
        }
        let mut t = 1;
        for s in sources {
            basis.push(s);
            images.push(e(t));
            t += 2;
        }
    }
    Ok(LinearMap::new(basis, images))
}

/// Quotient descent of the contraction for odd bounds: conjugate by the
/// canonical representative assignment on both sides.
pub fn cmap_prime(d: u32, j: u32) -> Result<LinearMap, F2Error> {
    check_bound(d)?;
    if d % 2 == 0 || d < 3 || j == 0 || j > d {
        return Err(F2Error::BadIndex(j));
    }
    let full = cmap(d, j)?;
    descend(&full, d)
}

/// Quotient descent of the odd-part contraction for odd bounds.
pub fn cmap_prime1(d: u32, j: u32) -> Result<LinearMap, F2Error> {
    check_bound(d)?;
    if d % 2 == 0 || d < 3 || j == 0 || j > d {
        return Err(F2Error::BadIndex(j));
    }
    let part = cmap1(d, j)?;
    descend(&part, d)
}

/// Push a map U -> V_{D-2} down to representatives of U/<eta_D>; valid
/// because the kernel line maps onto the kernel line downstairs.
fn descend(map: &LinearMap, d: u32) -> Result<LinearMap, F2Error> {
    debug_assert!(map.domain().contains(eta(d)), "eta must lie in the domain");
    let mut basis = Subspace::zero();
    let mut dom_vecs: Vec<Mask> = vec![];
    let mut img_vecs: Vec<Mask> = vec![];
    for &v in map.domain_basis() {
        let rep = vprime_rep(v, d);
        if basis.insert(rep) {
            dom_vecs.push(rep);
            // rep is in the original domain too: cosets meet it entirely
            let img = map.apply(rep);
            img_vecs.push(vprime_rep(img, d - 2));
        }
    }
    Ok(LinearMap::new(dom_vecs, img_vecs))
}

type SetMemo = Mutex<HashMap<u32, Vec<Subspace>>>;

fn cf_memo() -> &'static SetMemo {
    static MEMO: OnceLock<SetMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The inductive family of subspaces of V_D.
pub fn enum_cf(d: u32) -> Vec<Subspace> {
    check_bound(d).expect("bound");
    if let Some(v) = cf_memo().lock().unwrap().get(&d) {
        return v.clone();
    }
    let mut out: BTreeSet<Subspace> = BTreeSet::new();
    out.insert(Subspace::zero());
    if d == 1 {
        out.insert(Subspace::from_vectors([e(1)]));
    } else if d >= 2 {
        let prev = enum_cf(d - 2);
        for j in 1..=d {
            let map = cmap(d, j).unwrap();
            for e_prev in &prev {
                out.insert(map.preimage(e_prev));
            }
        }
    }
    let v: Vec<Subspace> = out.into_iter().collect();
    cf_memo()
        .lock()
        .unwrap()
        .insert(d, v.clone());
    v
}

/// A nested pair of subspaces, small inside large.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubspacePair {
    pub small: Subspace,
    pub large: Subspace,
}

impl SubspacePair {
    pub fn new(small: Subspace, large: Subspace) -> Self {
        debug_assert!(large.contains_subspace(&small));
        SubspacePair { small, large }
    }
}

type PairMemo = Mutex<HashMap<u32, Vec<SubspacePair>>>;

fn occ_memo() -> &'static PairMemo {
    static MEMO: OnceLock<PairMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The inductive collection of nested pairs in the odd part of V_D.
pub fn enum_occ(d: u32) -> Vec<SubspacePair> {
    check_bound(d).expect("bound");
    if let Some(v) = occ_memo().lock().unwrap().get(&d) {
        return v.clone();
    }
    let mut out: BTreeSet<SubspacePair> = BTreeSet::new();
    let odd = Subspace::from_vectors(f2::support(odd_mask(d)).into_iter().map(e));
    if d == 0 {
        out.insert(SubspacePair::new(Subspace::zero(), Subspace::zero()));
    } else if d == 1 {
        out.insert(SubspacePair::new(odd.clone(), odd.clone()));
        out.insert(SubspacePair::new(Subspace::zero(), odd.clone()));
    } else {
        out.insert(SubspacePair::new(Subspace::zero(), odd.clone()));
        let prev = enum_occ(d - 2);
        for j in 1..=d {
            let map = cmap1(d, j).unwrap();
            for pair in &prev {
                out.insert(SubspacePair::new(
                    map.preimage(&pair.small),
                    map.preimage(&pair.large),
                ));
            }
        }
    }
    let v: Vec<SubspacePair> = out.into_iter().collect();
    occ_memo().lock().unwrap().insert(d, v.clone());
    v
}

fn cf_prime_memo() -> &'static SetMemo {
    static MEMO: OnceLock<SetMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The inductive family in the quotient space V'_D, odd D; the top index is
/// excluded from the recursion.
pub fn enum_cf_prime(d: u32) -> Vec<Subspace> {
    assert!(d % 2 == 1, "quotient family defined for odd bounds");
    check_bound(d).expect("bound");
    if let Some(v) = cf_prime_memo().lock().unwrap().get(&d) {
        return v.clone();
    }
    let mut out: BTreeSet<Subspace> = BTreeSet::new();
    out.insert(Subspace::zero());
    if d >= 3 {
        let prev = enum_cf_prime(d - 2);
        for j in 1..d {
            let map = cmap_prime(d, j).unwrap();
            for e_prev in &prev {
                out.insert(map.preimage(e_prev));
            }
        }
    }
    let v: Vec<Subspace> = out.into_iter().collect();
    cf_prime_memo().lock().unwrap().insert(d, v.clone());
    v
}

fn occ_prime_memo() -> &'static PairMemo {
    static MEMO: OnceLock<PairMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Odd part of the quotient space: representative span of odd indices below D.
pub fn vprime_odd_subspace(d: u32) -> Subspace {
    debug_assert!(d % 2 == 1);
    let mut s = Subspace::zero();
    let mut i = 1;
    while i + 2 <= d {
        s.insert(e(i));
        i += 2;
    }
    s
}

/// The inductive collection of nested pairs in the odd part of V'_D.
pub fn enum_occ_prime(d: u32) -> Vec<SubspacePair> {
    assert!(d % 2 == 1, "quotient pairs defined for odd bounds");
    check_bound(d).expect("bound");
    if let Some(v) = occ_prime_memo().lock().unwrap().get(&d) {
        return v.clone();
    }
    let mut out: BTreeSet<SubspacePair> = BTreeSet::new();
    let odd = vprime_odd_subspace(d);
    out.insert(SubspacePair::new(Subspace::zero(), odd.clone()));
    if d >= 3 {
        let prev = enum_occ_prime(d - 2);
        for j in 1..d {
            let map = cmap_prime1(d, j).unwrap();
            for pair in &prev {
                out.insert(SubspacePair::new(
                    map.preimage(&pair.small),
                    map.preimage(&pair.large),
                ));
            }
        }
    }
    let v: Vec<SubspacePair> = out.into_iter().collect();
    occ_prime_memo().lock().unwrap().insert(d, v.clone());
    v
}

/// Annihilator of S inside the odd coordinate part of V_D under the pairing.
pub fn odd_annihilator(s: &Subspace, d: u32) -> Subspace {
    let odd_indices: Vec<u32> = f2::support(odd_mask(d));
    annihilator_in(&odd_indices, s)
}

/// Annihilator inside the representative odd part of V'_D.
pub fn vprime_odd_annihilator(s: &Subspace, d: u32) -> Subspace {
    let sub = vprime_odd_subspace(d);
    let idx: Vec<u32> = sub.rows().iter().map(|&r| max_index(r)).collect();
    annihilator_in(&idx, s)
}

fn annihilator_in(axis_indices: &[u32], s: &Subspace) -> Subspace {
    // solve (x, row) = 0 for each basis row, x supported on the given axes
    let n = axis_indices.len();
    let conditions: Vec<Mask> = s.rows().to_vec();
    let mut null_tags: Vec<Vec<bool>> = vec![];
    let mut pivot_rows: Vec<(Vec<u8>, Vec<bool>)> = vec![];
    for i in 0..n {
        let x = e(axis_indices[i]);
        let mut col: Vec<u8> = conditions
            .iter()
            .map(|&c| f2::symplectic(x, c))
            .collect();
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
    let mut out = Subspace::zero();
    for tag in null_tags {
        let mut v = 0;
        for (i, &c) in tag.iter().enumerate() {
            if c {
                v ^= e(axis_indices[i]);
            }
        }
        out.insert(v);
    }
    out
}

/// The structural map from a family member to its nested pair: odd part
/// inside the annihilator of the even part.
pub fn pi_map(e_sub: &Subspace, d: u32) -> Result<SubspacePair, F2Error> {
    // membership in the family is part of the contract
    interval_basis_of(e_sub)?;
    if e_sub.max_index() > d {
        return Err(F2Error::BadIndex(e_sub.max_index()));
    }
    let e0 = e_sub.intersect_coordinate(even_mask(d));
    let e1 = e_sub.intersect_coordinate(odd_mask(d));
    let ann = odd_annihilator(&e0, d);
    Ok(SubspacePair::new(e1, ann))
}

/// Inclusion-then-project map from the family at bound D-1 into the quotient
/// space at odd bound D; on representatives it is the identity on masks.
pub fn lambda_map(e_sub: &Subspace, d: u32) -> Result<Subspace, F2Error> {
    assert!(d % 2 == 1);
    if e_sub.max_index() > d - 1 {
        return Err(F2Error::BadIndex(e_sub.max_index()));
    }
    interval_basis_of(e_sub)?;
    Ok(e_sub.clone())
}

/// Pair map in the quotient space using the induced pairing.
pub fn lambda_prime(script_e: &Subspace, d: u32) -> SubspacePair {
    assert!(d % 2 == 1);
    let evens = even_mask(d - 1); // representative even part of V'_D
    let e0 = script_e.intersect_coordinate(evens);
    let odd_rep: Mask = vprime_odd_subspace(d)
        .rows()
        .iter()
        .fold(0, |acc, &r| acc | r);
    let e1 = script_e.intersect_coordinate(odd_rep);
    let ann = vprime_odd_annihilator(&e0, d);
    SubspacePair::new(e1, ann)
}

/// Marking vector transported to the quotient space.
pub fn epsilon_prime(script_e: &Subspace, d: u32) -> Result<Mask, F2Error> {
    assert!(d % 2 == 1);
    // representatives of the image coincide with the family member at D-1
    let marked = epsilon(script_e)?;
    Ok(vprime_rep(marked, d))
}

/// Zero level set of the quotient space: representatives of the projected set.
pub fn zero_vprime_set(d: u32) -> Vec<Mask> {
    assert!(d % 2 == 1);
    let mut out: BTreeSet<Mask> = BTreeSet::new();
    for x in f2::zero_v_set(d) {
        out.insert(vprime_rep(x, d));
    }
    out.into_iter().collect()
}
