//! The poset `Ω = {S_w}`, `⋆`-closure, dimension, `O_p` and fusion data.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::group::FiniteGroup;
use crate::locality::{Locality, Realization, SubId, WordState, NONE};
use crate::partial::{is_subgroup, ProductTable, Word};
use crate::report::Report;
use crate::Elem;

/// `Ω` with chain dimensions and a witness word for each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPoset {
    /// Members in lattice-id order.
    pub members: Vec<SubId>,
    pub is_member: Vec<bool>,
    /// Length of the longest strict chain in `Ω` ending at the member.
    pub dim_of: BTreeMap<SubId, usize>,
    pub witness: BTreeMap<SubId, Word>,
}

impl OmegaPoset {
    fn from_witnesses(l: &Locality, witness: BTreeMap<SubId, Word>) -> Self {
        let lat = l.lattice();
        let members: Vec<SubId> = witness.keys().copied().collect();
        let mut is_member = alloc::vec![false; lat.len()];
        for &m in &members {
            is_member[m] = true;
        }
        let mut by_order = members.clone();
        by_order.sort_by_key(|&m| lat.order(m));
        let mut dim_of = BTreeMap::new();
        for &m in &by_order {
            let d = by_order
                .iter()
                .filter(|&&y| y != m && lat.le(y, m))
                .filter_map(|y| dim_of.get(y))
                .map(|d: &usize| d + 1)
                .max()
                .unwrap_or(0);
            dim_of.insert(m, d);
        }
        OmegaPoset {
            members,
            is_member,
            dim_of,
            witness,
        }
    }

    pub fn contains(&self, x: SubId) -> bool {
        self.is_member[x]
    }

    /// Intersection of the members containing `x`.
    pub fn star(&self, l: &Locality, x: SubId) -> SubId {
        let lat = l.lattice();
        self.members
            .iter()
            .filter(|&&m| lat.le(x, m))
            .fold(lat.top(), |acc, &m| lat.meet(acc, m))
    }

    /// `dim(X) = dim(X^⋆)`.
    pub fn dim(&self, l: &Locality, x: SubId) -> usize {
        self.dim_of[&self.star(l, x)]
    }

    /// `dim` of every subgroup of `S`, indexed by lattice id.
    pub fn dim_table(&self, l: &Locality) -> Vec<usize> {
        l.lattice().ids().map(|x| self.dim(l, x)).collect()
    }

    /// Dimension of `Ω`.
    pub fn dimension(&self) -> usize {
        self.dim_of.values().copied().max().unwrap_or(0)
    }

    /// Whether `Ω` is closed under pairwise intersection.
    pub fn intersection_closed(&self, l: &Locality) -> bool {
        let lat = l.lattice();
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.is_member[lat.meet(a, b)]))
    }
}

/// `Ω` by saturation over ambient summaries `(S_w, Π(w))` for localities in
/// a group, and over conjugation maps on `S` otherwise.
pub fn compute_omega(l: &Locality) -> OmegaPoset {
    match l.realization() {
        Realization::Ambient { .. } => compute_omega_by_states(l),
        Realization::Quotient { .. } => compute_omega_by_maps(l),
    }
}

/// Saturation over `(S_w, Π(w))` with `Π(w)` computed in the ambient group.
pub fn compute_omega_by_states(l: &Locality) -> OmegaPoset {
    let mut witness: BTreeMap<SubId, Word> = BTreeMap::new();
    let start: WordState = l.empty_state();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([(start, Word::new())]);
    while let Some((st, w)) = queue.pop_front() {
        let sub = l
            .root_sub_image(st.sub as SubId)
            .expect("ambient summary maps into the lattice");
        witness.entry(sub).or_insert_with(|| w.clone());
        for g in l.elements() {
            let t = l.compose_state(st, g);
            if seen.insert(t) {
                let mut w2 = w.clone();
                w2.push(g);
                queue.push_back((t, w2));
            }
        }
    }
    OmegaPoset::from_witnesses(l, witness)
}

/// Saturation over the partial maps `x ↦ x^w` on `S`.
pub fn compute_omega_by_maps(l: &Locality) -> OmegaPoset {
    let s = l.s_elements();
    let mut witness: BTreeMap<SubId, Word> = BTreeMap::new();
    let start: Vec<u32> = s.iter().map(|&x| x as u32).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Word::new())]);
    while let Some((m, w)) = queue.pop_front() {
        let dom = l.set((0..s.len()).filter(|&i| m[i] != NONE).map(|i| s[i]));
        let sub = l.sub_id(&dom).expect("S_w is a subgroup");
        witness.entry(sub).or_insert_with(|| w.clone());
        for g in l.elements() {
            let next: Vec<u32> = m
                .iter()
                .map(|&y| {
                    if y == NONE {
                        NONE
                    } else {
                        l.sconj(y as Elem, g).map_or(NONE, |z| z as u32)
                    }
                })
                .collect();
            if seen.insert(next.clone()) {
                let mut w2 = w.clone();
                w2.push(g);
                queue.push_back((next, w2));
            }
        }
    }
    OmegaPoset::from_witnesses(l, witness)
}

/// `X^⋆`.
pub fn star(l: &Locality, x: SubId) -> SubId {
    compute_omega(l).star(l, x)
}

/// `O_p(L) = 𝟙^⋆`.
pub fn o_p(l: &Locality) -> SubId {
    compute_omega(l).star(l, l.lattice().bottom())
}

/// A map between subgroups of `S`, as the images of the sorted elements of
/// its source.
pub type FusionMap = Vec<Elem>;

/// Images of the elements of `P` under all words `w` with `P ≤ S_w`, each
/// paired with a shortest witness word.
fn word_images(l: &Locality, p: SubId) -> BTreeMap<FusionMap, Word> {
    let src = l.lattice().set(p).to_vec();
    let mut out = BTreeMap::new();
    out.insert(src.clone(), Word::new());
    let mut queue = VecDeque::from([src]);
    while let Some(img) = queue.pop_front() {
        let w = out[&img].clone();
        for g in l.elements() {
            let next: Option<FusionMap> = img.iter().map(|&y| l.sconj(y, g)).collect();
            if let Some(next) = next {
                if !out.contains_key(&next) {
                    let mut w2 = w.clone();
                    w2.push(g);
                    out.insert(next.clone(), w2);
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

/// `Hom_F(P, Q)`: conjugation maps by words `w` with `P ≤ S_w` and
/// `P^w ≤ Q`.
pub fn fusion_morphisms(l: &Locality, p: SubId, q: SubId) -> Vec<FusionMap> {
    let qs = l.lattice().set(q);
    word_images(l, p)
        .into_keys()
        .filter(|img| img.iter().all(|&y| qs.contains(y)))
        .collect()
}

/// Conjugation maps `c_g` restricted to `P`, for `g` with `P ≤ S_g` and
/// `P^g ≤ Q`.
pub fn single_step_morphisms(l: &Locality, p: SubId, q: SubId) -> Vec<FusionMap> {
    let lat = l.lattice();
    let src = lat.set(p).to_vec();
    let mut out = BTreeSet::new();
    for g in l.elements() {
        if let Some(r) = l.conj_sub(p, g) {
            if lat.le(r, q) {
                out.insert(src.iter().map(|&x| l.conj(x, g).unwrap()).collect::<FusionMap>());
            }
        }
    }
    out.into_iter().collect()
}

/// Images of `X` under all fusion morphisms defined on `X`.
pub fn f_conjugates(l: &Locality, x: SubId) -> Vec<SubId> {
    let mut out: BTreeSet<SubId> = BTreeSet::new();
    for img in word_images(l, x).into_keys() {
        out.insert(l.sub_id(&l.set(img)).expect("image of a subgroup"));
    }
    out.into_iter().collect()
}

/// `X` is fully normalized when `dim(N_S(X)) ≥ dim(N_S(Y))` for every
/// `F`-conjugate `Y`.
pub fn is_fully_normalized(l: &Locality, omega: &OmegaPoset, x: SubId) -> bool {
    let top = l.s_id();
    let d = omega.dim(l, l.normalizer_in(top, x));
    f_conjugates(l, x)
        .into_iter()
        .all(|y| omega.dim(l, l.normalizer_in(top, y)) <= d)
}

/// `x^g ∈ R` whenever `x ∈ R ∩ S_g`.
pub fn is_strongly_closed(l: &Locality, r: SubId) -> bool {
    let rs = l.lattice().set(r);
    l.elements().all(|g| {
        rs.iter()
            .all(|x| l.sconj(x, g).is_none_or(|y| rs.contains(y)))
    })
}

/// Closed under images of `F`-isomorphisms.
pub fn is_f_invariant(l: &Locality, family: &[bool]) -> bool {
    l.lattice()
        .ids()
        .filter(|&x| family[x])
        .all(|x| f_conjugates(l, x).into_iter().all(|y| family[y]))
}

/// Closed under overgroups of images of `F`-homomorphisms.
pub fn is_f_closed(l: &Locality, family: &[bool]) -> bool {
    let lat = l.lattice();
    is_f_invariant(l, family)
        && lat
            .ids()
            .filter(|&x| family[x])
            .all(|x| lat.overgroups(x).all(|y| family[y]))
}

/// All subgroups of the carrier (subsets all of whose words are in the
/// domain) whose elements satisfy `elem_ok` and which satisfy the inherited
/// property `sub_ok`, sorted. `None` once more than `cap` are found.
pub fn subgroups_of_locality(
    l: &Locality,
    elem_ok: impl Fn(Elem) -> bool,
    sub_ok: impl Fn(&ElemSet) -> bool,
    cap: usize,
) -> Option<Vec<ElemSet>> {
    let table = ProductTable::new(l);
    let cands: Vec<Elem> = l.elements().filter(|&g| elem_ok(g)).collect();
    let triv = l.set([0]);
    let mut found: BTreeSet<ElemSet> = BTreeSet::from([triv.clone()]);
    let mut queue = VecDeque::from([triv]);
    while let Some(h) = queue.pop_front() {
        for &g in &cands {
            if h.contains(g) {
                continue;
            }
            let k = table.extend(&h, [g]);
            if found.contains(&k) || !k.iter().all(&elem_ok) || !sub_ok(&k) || !is_subgroup(l, &k) {
                continue;
            }
            found.insert(k.clone());
            if found.len() > cap {
                return None;
            }
            queue.push_back(k);
        }
    }
    Some(found.into_iter().collect())
}

fn element_order(l: &Locality, g: Elem) -> Option<usize> {
    let mut x = g;
    let mut k = 1;
    while x != 0 {
        x = l.mul(x, g)?;
        k += 1;
        if k > l.size() {
            return None;
        }
    }
    Some(k)
}

/// All p-subgroups of the carrier, sorted.
pub fn p_subgroups(l: &Locality, cap: usize) -> Option<Vec<ElemSet>> {
    let p = l.prime();
    subgroups_of_locality(
        l,
        |g| element_order(l, g).is_some_and(|k| FiniteGroup::is_p_group_order(k, p)),
        |h| FiniteGroup::is_p_group_order(h.len(), p),
        cap,
    )
}

/// `P^g` for a subset `P` of the carrier, when every conjugate is defined.
pub fn conj_set(l: &Locality, set: &ElemSet, g: Elem) -> Option<ElemSet> {
    let mut out = ElemSet::new(l.size());
    for x in set.iter() {
        out.insert(l.conj(x, g)?);
    }
    Some(out)
}

/// `S` is a maximal p-subgroup and every p-subgroup of the carrier is
/// conjugate into `S` by a single element.
pub fn check_sylow(l: &Locality, cap: usize) -> Report {
    let mut r = Report::new();
    let Some(ps) = p_subgroups(l, cap) else {
        r.fail("p-subgroups-enumerated", alloc::format!("more than {cap} p-subgroups"));
        return r;
    };
    r.case("p-subgroups-enumerated", true, Default::default);
    let s = l.s();
    for p in &ps {
        r.case("s-maximal", !(s.is_subset(p) && p != s), || alloc::format!("{:?}", p));
        let ok = l
            .elements()
            .any(|g| conj_set(l, p, g).is_some_and(|q| q.is_subset(s)));
        r.case("conjugate-into-s", ok, || alloc::format!("{:?}", p));
    }
    r
}

/// For a subgroup `H` of the carrier: `⋂{S_v : v ∈ W(H)}`.
pub fn largest_normalized_object(l: &Locality, h: &ElemSet) -> SubId {
    let s = l.s_elements();
    let start: Vec<u32> = s.iter().map(|&x| x as u32).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut acc = l.s().clone();
    while let Some(m) = queue.pop_front() {
        acc.intersect_with(&l.set((0..s.len()).filter(|&i| m[i] != NONE).map(|i| s[i])));
        for g in h.iter() {
            let next: Vec<u32> = m
                .iter()
                .map(|&y| {
                    if y == NONE {
                        NONE
                    } else {
                        l.sconj(y as Elem, g).map_or(NONE, |z| z as u32)
                    }
                })
                .collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    l.sub_id(&acc).expect("intersection of subgroups")
}

impl Locality {
    pub(crate) fn empty_state(&self) -> WordState {
        self.root.empty()
    }

    pub(crate) fn compose_state(&self, s: WordState, g: Elem) -> WordState {
        self.root.compose(s, self.letters[g])
    }
}
