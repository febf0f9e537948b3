//! Objective partial groups and localities.
//!
//! Every locality is ultimately realized inside an ambient finite group `G`
//! with a subgroup `S` and an object family `Δ`: a word `w` over the carrier
//! is summarized by the pair `(S_w, Π(w))` computed in `G`, and `w` is in the
//! domain iff `S_w ∈ Δ`. Quotient localities keep that ambient summary of a
//! lift of each of their elements, so the same summary decides their domain.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::partial::{generated_partial_subgroup, is_subgroup, PartialGroup, WordSummary};
use crate::report::Report;
use crate::Elem;

pub(crate) const NONE: u32 = u32::MAX;

pub type SubId = usize;

/// The subgroups of `S`, sorted by member list, with their meet table.
#[derive(Clone, Debug)]
pub struct SubLattice {
    sets: Vec<ElemSet>,
    index: BTreeMap<ElemSet, SubId>,
    meet: Vec<u32>,
    orders: Vec<usize>,
    top: SubId,
    bottom: SubId,
}

impl SubLattice {
    /// `sets` must be every subgroup of some group, each exactly once.
    pub fn new(mut sets: Vec<ElemSet>) -> Self {
        sets.sort();
        sets.dedup();
        let index: BTreeMap<ElemSet, SubId> =
            sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let k = sets.len();
        let mut meet = alloc::vec![NONE; k * k];
        for a in 0..k {
            for b in a..k {
                let m = sets[a].intersection(&sets[b]);
                let id = index.get(&m).map_or(NONE, |&i| i as u32);
                meet[a * k + b] = id;
                meet[b * k + a] = id;
            }
        }
        let orders: Vec<usize> = sets.iter().map(ElemSet::len).collect();
        let top = (0..k).max_by_key(|&i| orders[i]).unwrap_or(0);
        let bottom = (0..k).min_by_key(|&i| orders[i]).unwrap_or(0);
        SubLattice {
            sets,
            index,
            meet,
            orders,
            top,
            bottom,
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, id: SubId) -> &ElemSet {
        &self.sets[id]
    }

    pub fn id_of(&self, set: &ElemSet) -> Option<SubId> {
        self.index.get(set).copied()
    }

    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        self.meet[a * self.sets.len() + b] as SubId
    }

    pub fn le(&self, a: SubId, b: SubId) -> bool {
        self.meet(a, b) == a
    }

    pub fn order(&self, id: SubId) -> usize {
        self.orders[id]
    }

    /// The whole of `S`.
    pub fn top(&self) -> SubId {
        self.top
    }

    /// The trivial subgroup.
    pub fn bottom(&self) -> SubId {
        self.bottom
    }

    pub fn ids(&self) -> core::ops::Range<SubId> {
        0..self.sets.len()
    }

    pub fn overgroups(&self, a: SubId) -> impl Iterator<Item = SubId> + '_ {
        self.ids().filter(move |&b| self.le(a, b))
    }

    /// Smallest member containing `set`.
    pub fn closure_of(&self, set: &ElemSet) -> SubId {
        self.ids()
            .filter(|&i| set.is_subset(&self.sets[i]))
            .min_by_key(|&i| self.orders[i])
            .unwrap_or(self.top)
    }

    /// The subgroup generated by `a` and `b`.
    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        self.closure_of(&self.sets[a].union(&self.sets[b]))
    }
}

/// Ambient summary of a word: `S_w` (as an id in the root lattice) and the
/// product in `G` of its entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordState {
    pub sub: u32,
    pub h: u32,
}

/// Tables shared by a root locality and every locality derived from it.
#[derive(Debug)]
pub(crate) struct Root {
    pub group: Arc<FiniteGroup>,
    /// Subgroups of `S`, in group ids.
    pub lat: SubLattice,
    /// `pre[h * k + q]` is the id of `{x ∈ S : x^h ∈ Q_q}`.
    pub pre: Vec<u32>,
    pub delta: Vec<bool>,
}

impl Root {
    #[inline]
    pub fn compose(&self, a: WordState, b: WordState) -> WordState {
        let k = self.lat.len();
        let pb = self.pre[a.h as usize * k + b.sub as usize] as usize;
        WordState {
            sub: self.lat.meet(a.sub as usize, pb) as u32,
            h: self.group.mul(a.h as usize, b.h as usize) as u32,
        }
    }

    pub fn empty(&self) -> WordState {
        WordState {
            sub: self.lat.top() as u32,
            h: 0,
        }
    }

    pub fn letter(&self, g: Elem) -> WordState {
        let k = self.lat.len();
        WordState {
            sub: self.pre[g * k + self.lat.top()],
            h: g as u32,
        }
    }
}

/// How the object family was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Explicit,
    Overclosure,
    AllNonidentity,
    All,
    /// Produced by a derived-locality operation.
    Derived(String),
}

impl DeltaMode {
    pub fn name(&self) -> String {
        match self {
            DeltaMode::Explicit => "explicit".into(),
            DeltaMode::Overclosure => "overclosure".into(),
            DeltaMode::AllNonidentity => "all-nonidentity".into(),
            DeltaMode::All => "all".into(),
            DeltaMode::Derived(s) => format!("derived:{s}"),
        }
    }
}

/// Object specification, with subgroups given in group element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaSpec {
    Explicit(Vec<ElemSet>),
    Overclosure(Vec<ElemSet>),
    AllNonidentity,
    All,
}

#[derive(Clone, Debug)]
pub enum Realization {
    /// Carrier inside the ambient group; `to_group[g]` is the group element.
    Ambient {
        to_group: Vec<u32>,
        from_group: Vec<u32>,
        /// Whether the carrier was produced by `{g : S ∩ S^g ∈ Δ}`.
        by_construction: bool,
    },
    /// Elements are maximal cosets of a partial normal subgroup of `parent`.
    Quotient {
        parent: Arc<Locality>,
        block_of: Vec<u32>,
        reps: Vec<u32>,
        blocks: Vec<ElemSet>,
    },
}

/// A locality `(L, Δ, S)` with explicit prime.
#[derive(Clone, Debug)]
pub struct Locality {
    pub(crate) prime: usize,
    pub(crate) n: usize,
    pub(crate) labels: Vec<String>,
    pub(crate) inv: Vec<u32>,
    pub(crate) s_list: Vec<Elem>,
    pub(crate) s_set: ElemSet,
    pub(crate) lat: SubLattice,
    pub(crate) delta: Vec<bool>,
    pub(crate) delta_mode: DeltaMode,
    pub(crate) auto_closed: bool,
    pub(crate) root: Arc<Root>,
    pub(crate) letters: Vec<WordState>,
    pub(crate) state_to_elem: Vec<u32>,
    pub(crate) mul: Vec<u32>,
    pub(crate) conj: Vec<u32>,
    pub(crate) sg: Vec<u32>,
    pub(crate) realization: Realization,
}

/// Parts from which [`Locality::assemble`] computes the derived tables.
pub(crate) struct Parts {
    pub prime: usize,
    pub labels: Vec<String>,
    pub inv: Vec<u32>,
    pub s_list: Vec<Elem>,
    pub lat: SubLattice,
    pub delta: Vec<bool>,
    pub delta_mode: DeltaMode,
    pub auto_closed: bool,
    pub root: Arc<Root>,
    pub letters: Vec<WordState>,
    pub state_to_elem: Vec<u32>,
    pub realization: Realization,
}

impl Locality {
    pub(crate) fn assemble(p: Parts) -> Locality {
        let n = p.letters.len();
        let mut s_set = ElemSet::new(n);
        for &x in &p.s_list {
            s_set.insert(x);
        }
        let root = &p.root;
        let prod = |s: WordState| -> u32 {
            if root.delta[s.sub as usize] {
                p.state_to_elem[s.h as usize]
            } else {
                NONE
            }
        };
        let mut mul = alloc::vec![NONE; n * n];
        let mut conj = alloc::vec![NONE; n * n];
        for a in 0..n {
            let la = p.letters[a];
            let lai = p.letters[p.inv[a] as usize];
            for b in 0..n {
                mul[a * n + b] = prod(root.compose(la, p.letters[b]));
                // conj[g * n + x] = x^g
                conj[a * n + b] = prod(root.compose(root.compose(lai, p.letters[b]), la));
            }
        }
        let mut sg = alloc::vec![NONE; n];
        for g in 0..n {
            let set = ElemSet::from_iter(
                n,
                p.s_list.iter().copied().filter(|&x| {
                    let y = conj[g * n + x];
                    y != NONE && s_set.contains(y as usize)
                }),
            );
            sg[g] = p.lat.id_of(&set).map_or(NONE, |i| i as u32);
        }
        Locality {
            prime: p.prime,
            n,
            labels: p.labels,
            inv: p.inv,
            s_list: p.s_list,
            s_set,
            lat: p.lat,
            delta: p.delta,
            delta_mode: p.delta_mode,
            auto_closed: p.auto_closed,
            root: p.root,
            letters: p.letters,
            state_to_elem: p.state_to_elem,
            mul,
            conj,
            sg,
            realization: p.realization,
        }
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn inv(&self, g: Elem) -> Elem {
        self.inv[g] as Elem
    }

    /// `Π(a, b)` when defined.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        let v = self.mul[a * self.n + b];
        (v != NONE).then_some(v as Elem)
    }

    /// `x^g = Π(g⁻¹, x, g)` when defined.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Option<Elem> {
        let v = self.conj[g * self.n + x];
        (v != NONE).then_some(v as Elem)
    }

    /// `x^g` for `x ∈ S` when it is defined and lies in `S`.
    #[inline]
    pub fn sconj(&self, x: Elem, g: Elem) -> Option<Elem> {
        self.conj(x, g).filter(|&y| self.s_set.contains(y))
    }

    pub fn label(&self, g: Elem) -> &str {
        &self.labels[g]
    }

    pub fn s(&self) -> &ElemSet {
        &self.s_set
    }

    pub fn s_elements(&self) -> &[Elem] {
        &self.s_list
    }

    pub fn lattice(&self) -> &SubLattice {
        &self.lat
    }

    pub fn s_id(&self) -> SubId {
        self.lat.top()
    }

    pub fn is_object(&self, p: SubId) -> bool {
        self.delta[p]
    }

    pub fn objects(&self) -> Vec<SubId> {
        self.lat.ids().filter(|&i| self.delta[i]).collect()
    }

    pub fn delta_mode(&self) -> &DeltaMode {
        &self.delta_mode
    }

    /// Whether the object specification had to be closed to satisfy the
    /// overgroup condition.
    pub fn auto_closed(&self) -> bool {
        self.auto_closed
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.n
    }

    pub fn set(&self, it: impl IntoIterator<Item = Elem>) -> ElemSet {
        ElemSet::from_iter(self.n, it)
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// The ambient group, for localities realized inside one.
    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.realization {
            Realization::Ambient { .. } => Some(&self.root.group),
            Realization::Quotient { .. } => None,
        }
    }

    pub fn root_group(&self) -> &Arc<FiniteGroup> {
        &self.root.group
    }

    pub fn to_group(&self, g: Elem) -> Option<Elem> {
        match &self.realization {
            Realization::Ambient { to_group, .. } => Some(to_group[g] as Elem),
            Realization::Quotient { .. } => None,
        }
    }

    pub fn from_group(&self, h: Elem) -> Option<Elem> {
        match &self.realization {
            Realization::Ambient { from_group, .. } => {
                let v = *from_group.get(h)?;
                (v != NONE).then_some(v as Elem)
            }
            Realization::Quotient { .. } => None,
        }
    }

    /// Carrier as a set of group elements.
    pub fn carrier_in_group(&self) -> Option<ElemSet> {
        match &self.realization {
            Realization::Ambient { to_group, .. } => Some(ElemSet::from_iter(
                self.root.group.order(),
                to_group.iter().map(|&h| h as Elem),
            )),
            Realization::Quotient { .. } => None,
        }
    }

    /// Maps a set of group elements into local ids, if all lie in the carrier.
    pub fn local_set(&self, set: &ElemSet) -> Option<ElemSet> {
        let mut out = ElemSet::new(self.n);
        for h in set.iter() {
            out.insert(self.from_group(h)?);
        }
        Some(out)
    }

    pub fn group_set(&self, set: &ElemSet) -> Option<ElemSet> {
        let g = self.group()?;
        Some(g.set(set.iter().map(|x| self.to_group(x).unwrap())))
    }

    pub fn quotient_parent(&self) -> Option<&Arc<Locality>> {
        match &self.realization {
            Realization::Quotient { parent, .. } => Some(parent),
            Realization::Ambient { .. } => None,
        }
    }

    /// Ambient summary of a word.
    pub fn state(&self, w: &[Elem]) -> WordState {
        w.iter()
            .fold(self.root.empty(), |acc, &g| self.root.compose(acc, self.letters[g]))
    }

    pub fn state_in_domain(&self, s: WordState) -> bool {
        self.root.delta[s.sub as usize]
    }

    pub fn state_product(&self, s: WordState) -> Option<Elem> {
        if !self.state_in_domain(s) {
            return None;
        }
        let v = self.state_to_elem[s.h as usize];
        (v != NONE).then_some(v as Elem)
    }

    /// `S_g`.
    pub fn s_g(&self, g: Elem) -> SubId {
        self.sg[g] as SubId
    }

    pub fn s_g_checked(&self, g: Elem) -> Result<SubId> {
        if g >= self.n {
            return Err(Error::InvalidInput(format!("{g} is not in the carrier")));
        }
        let v = self.sg[g];
        if v == NONE {
            return Err(Error::InvalidInput(format!("S_{g} is not a subgroup")));
        }
        Ok(v as SubId)
    }

    /// `S_w` as a set: elements of `S` conjugated successively into `S`.
    pub fn s_w_set(&self, w: &[Elem]) -> ElemSet {
        self.set(self.s_list.iter().copied().filter(|&x| {
            let mut y = x;
            for &g in w {
                match self.sconj(y, g) {
                    Some(z) => y = z,
                    None => return false,
                }
            }
            true
        }))
    }

    pub fn s_w(&self, w: &[Elem]) -> Result<SubId> {
        if let Some(&g) = w.iter().find(|&&g| g >= self.n) {
            return Err(Error::InvalidInput(format!("{g} is not in the carrier")));
        }
        self.lat
            .id_of(&self.s_w_set(w))
            .ok_or_else(|| Error::InvalidInput("S_w is not a subgroup".into()))
    }

    /// `P^g` when `P ≤ S_g`.
    pub fn conj_sub(&self, p: SubId, g: Elem) -> Option<SubId> {
        if !self.lat.le(p, self.s_g(g)) {
            return None;
        }
        let img = self.set(self.lat.set(p).iter().map(|x| self.conj(x, g).unwrap()));
        self.lat.id_of(&img)
    }

    /// `P^w` when `P ≤ S_w`.
    pub fn conj_sub_word(&self, p: SubId, w: &[Elem]) -> Option<SubId> {
        w.iter().try_fold(p, |q, &g| self.conj_sub(q, g))
    }

    /// `N_L(P, Q) = {g : P ≤ S_g, P^g ≤ Q}` intersected with `within`.
    pub fn transporter(&self, p: SubId, q: SubId, within: &ElemSet) -> ElemSet {
        self.set(within.iter().filter(|&g| {
            self.conj_sub(p, g)
                .is_some_and(|r| self.lat.le(r, q))
        }))
    }

    /// `N_L(P) = {g : P ≤ S_g, P^g = P}`.
    pub fn normalizer(&self, p: SubId) -> ElemSet {
        self.set(self.elements().filter(|&g| self.conj_sub(p, g) == Some(p)))
    }

    /// The subgroup of `S` normalizing `P` within `Q`.
    pub fn normalizer_in(&self, q: SubId, p: SubId) -> SubId {
        let set = self.set(
            self.lat
                .set(q)
                .iter()
                .filter(|&x| self.conj_sub(p, x) == Some(p)),
        );
        self.lat.id_of(&set).expect("normalizer in S is a subgroup")
    }

    /// Id of a subset of `S` that is a subgroup.
    pub fn sub_id(&self, set: &ElemSet) -> Option<SubId> {
        self.lat.id_of(set)
    }

    /// Id of a subgroup of `S` given in group element ids.
    pub fn sub_id_from_group(&self, set: &ElemSet) -> Option<SubId> {
        self.lat.id_of(&self.local_set(set)?)
    }

    /// Whether every word in the carrier is in the domain.
    pub fn is_group(&self) -> bool {
        is_subgroup(self, &self.full())
    }

    /// Image of a root-lattice subgroup in this locality's lattice.
    pub(crate) fn root_sub_image(&self, root_sub: SubId) -> Option<SubId> {
        match &self.realization {
            Realization::Ambient { .. } => Some(root_sub),
            Realization::Quotient { .. } => {
                // lift through the chain: root group elements -> local elements
                let set = self.set(
                    self.root
                        .lat
                        .set(root_sub)
                        .iter()
                        .map(|h| self.state_to_elem[h] as Elem),
                );
                self.lat.id_of(&set)
            }
        }
    }
}

impl PartialGroup for Locality {
    fn size(&self) -> usize {
        self.n
    }
    fn identity(&self) -> Elem {
        0
    }
    fn invert(&self, g: Elem) -> Elem {
        self.inv[g] as Elem
    }
    fn in_domain(&self, w: &[Elem]) -> bool {
        self.state_in_domain(self.state(w))
    }
    fn product(&self, w: &[Elem]) -> Option<Elem> {
        self.state_product(self.state(w))
    }
    fn label(&self, g: Elem) -> String {
        self.labels[g].clone()
    }
    fn conjugate(&self, x: Elem, g: Elem) -> Option<Elem> {
        self.conj(x, g)
    }
}

impl WordSummary for Locality {
    type Summary = WordState;
    fn empty_summary(&self) -> WordState {
        self.root.empty()
    }
    fn letter(&self, g: Elem) -> WordState {
        self.letters[g]
    }
    fn compose(&self, a: &WordState, b: &WordState) -> WordState {
        self.root.compose(*a, *b)
    }
    fn summary_in_domain(&self, s: &WordState) -> bool {
        self.state_in_domain(*s)
    }
    fn summary_product(&self, s: &WordState) -> Option<Elem> {
        self.state_product(*s)
    }
}

/// All subgroups of `S` (group ids).
fn subgroups_of(g: &FiniteGroup, s: &Subgroup) -> Vec<ElemSet> {
    g.subgroups_where(|x| s.contains(x), |_| true)
        .into_iter()
        .map(|h| h.members)
        .collect()
}

/// Closes `seeds` under conjugation into `S` by elements of `G` and under
/// overgroups in `S`.
fn close_objects(g: &FiniteGroup, lat: &SubLattice, s: &ElemSet, seeds: &BTreeSet<SubId>) -> Vec<bool> {
    let mut delta = alloc::vec![false; lat.len()];
    let mut queue = VecDeque::new();
    for &x in seeds {
        if !delta[x] {
            delta[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for h in g.elements() {
            let img = g.conjugate_set(lat.set(x), h);
            if !img.is_subset(s) {
                continue;
            }
            let y = lat.id_of(&img).expect("conjugate of a subgroup is a subgroup");
            for z in lat.overgroups(y) {
                if !delta[z] {
                    delta[z] = true;
                    queue.push_back(z);
                }
            }
        }
    }
    delta
}

fn build_root(group: Arc<FiniteGroup>, s: &Subgroup, delta_of: impl FnOnce(&SubLattice) -> Result<Vec<bool>>) -> Result<Root> {
    let lat = SubLattice::new(subgroups_of(&group, s));
    let delta = delta_of(&lat)?;
    let k = lat.len();
    let s_list = s.elements();
    let ord = group.order();
    let mut pre = alloc::vec![0u32; ord * k];
    for h in 0..ord {
        let imgs: Vec<Elem> = s_list.iter().map(|&x| group.conj(x, h)).collect();
        for q in 0..k {
            let set = group.set(
                s_list
                    .iter()
                    .zip(&imgs)
                    .filter(|(_, &y)| lat.set(q).contains(y))
                    .map(|(&x, _)| x),
            );
            pre[h * k + q] = lat.id_of(&set).expect("preimage is a subgroup") as u32;
        }
    }
    Ok(Root {
        group,
        lat,
        pre,
        delta,
    })
}

/// Builds a locality whose carrier is `carrier` (group ids) over a root.
pub(crate) fn from_root(
    root: Arc<Root>,
    prime: usize,
    carrier: &ElemSet,
    delta_mode: DeltaMode,
    auto_closed: bool,
    by_construction: bool,
) -> Locality {
    let g = root.group.clone();
    let to_group: Vec<u32> = carrier.iter().map(|h| h as u32).collect();
    let mut from_group = alloc::vec![NONE; g.order()];
    for (i, &h) in to_group.iter().enumerate() {
        from_group[h as usize] = i as u32;
    }
    let n = to_group.len();
    let inv = to_group
        .iter()
        .map(|&h| from_group[g.inv(h as usize)])
        .collect();
    let s_top = root.lat.set(root.lat.top());
    let s_list: Vec<Elem> = s_top.iter().map(|h| from_group[h] as Elem).collect();
    let local_sets: Vec<ElemSet> = root
        .lat
        .ids()
        .map(|i| ElemSet::from_iter(n, root.lat.set(i).iter().map(|h| from_group[h] as Elem)))
        .collect();
    let lat = SubLattice::new(local_sets);
    let letters = to_group.iter().map(|&h| root.letter(h as Elem)).collect();
    let labels = to_group.iter().map(|&h| g.label(h as Elem).into()).collect();
    let delta = root.delta.clone();
    Locality::assemble(Parts {
        prime,
        labels,
        inv,
        s_list,
        lat,
        delta,
        delta_mode,
        auto_closed,
        root: root.clone(),
        letters,
        state_to_elem: from_group.clone(),
        realization: Realization::Ambient {
            to_group,
            from_group,
            by_construction,
        },
    })
}

/// Builds `(L, Δ, S)` from a group: `L = {g ∈ G : S ∩ S^g ∈ Δ}` after
/// closing `Δ` under conjugation into `S` and under overgroups.
pub fn build_locality(group: Arc<FiniteGroup>, p: usize, s: &Subgroup, spec: &DeltaSpec) -> Result<Locality> {
    if p < 2 || (2..p).any(|d| p % d == 0) {
        return Err(Error::InvalidInput(format!("{p} is not a prime")));
    }
    if !group.is_subgroup(&s.members) {
        return Err(Error::InvalidInput("S is not a subgroup".into()));
    }
    if !FiniteGroup::is_p_group_order(s.order(), p)
        || s.order() != FiniteGroup::p_part(group.order(), p)
    {
        return Err(Error::InvalidInput(format!(
            "S of order {} is not a maximal {p}-subgroup of a group of order {}",
            s.order(),
            group.order()
        )));
    }
    let mut auto_closed = false;
    let mut mode = DeltaMode::All;
    let root = build_root(group.clone(), s, |lat| {
        let (seeds, m): (BTreeSet<SubId>, DeltaMode) = match spec {
            DeltaSpec::Explicit(v) | DeltaSpec::Overclosure(v) => {
                let mut ids = BTreeSet::new();
                for set in v {
                    let id = lat.id_of(set).ok_or_else(|| {
                        Error::InvalidInput(format!("object {:?} is not a subgroup of S", set))
                    })?;
                    ids.insert(id);
                }
                let m = if matches!(spec, DeltaSpec::Explicit(_)) {
                    DeltaMode::Explicit
                } else {
                    DeltaMode::Overclosure
                };
                (ids, m)
            }
            DeltaSpec::AllNonidentity => (
                lat.ids().filter(|&i| lat.order(i) > 1).collect(),
                DeltaMode::AllNonidentity,
            ),
            DeltaSpec::All => (lat.ids().collect(), DeltaMode::All),
        };
        let mut seeds = seeds;
        seeds.insert(lat.top());
        let delta = close_objects(&group, lat, &s.members, &seeds);
        let closed: BTreeSet<SubId> = lat.ids().filter(|&i| delta[i]).collect();
        auto_closed = m == DeltaMode::Explicit && closed != seeds
            || matches!(spec, DeltaSpec::Explicit(v) if !v.iter().any(|x| x == &s.members));
        mode = m;
        Ok(delta)
    })?;
    let k = root.lat.len();
    let top = root.lat.top();
    let carrier = group.set(group.elements().filter(|&h| {
        // S ∩ S^h = {x ∈ S : x^{h⁻¹} ∈ S}
        let hi = group.inv(h);
        root.delta[root.pre[hi * k + top] as usize]
    }));
    Ok(from_root(Arc::new(root), p, &carrier, mode, auto_closed, true))
}

impl Locality {
    /// `(L|_Γ, Γ, S)`: carrier `{g : S_g ∈ Γ}`, domain `{w : S_w ∈ Γ}`.
    pub fn restrict_to(&self, gamma: &[SubId]) -> Result<Locality> {
        self.require_ambient("restriction")?;
        let mut in_gamma = alloc::vec![false; self.lat.len()];
        for &x in gamma {
            if x >= self.lat.len() || !self.delta[x] {
                return Err(Error::InvalidInput("restriction family is not contained in the objects".into()));
            }
            in_gamma[x] = true;
        }
        if let Some(msg) = self.f_closed_violation(&in_gamma) {
            return Err(Error::InvalidInput(msg));
        }
        let carrier: ElemSet = self.root.group.set(
            self.elements()
                .filter(|&g| in_gamma[self.s_g(g)])
                .map(|g| self.to_group(g).unwrap()),
        );
        let root = Root {
            group: self.root.group.clone(),
            lat: self.root.lat.clone(),
            pre: self.root.pre.clone(),
            delta: in_gamma,
        };
        Ok(from_root(Arc::new(root), self.prime, &carrier, DeltaMode::Derived("restriction".into()), false, false))
    }

    /// `(N_L(T), Δ, S)` for `T ⊴ S`.
    pub fn normalizer_locality(&self, t: SubId) -> Result<Locality> {
        self.require_ambient("normalizer locality")?;
        if !self.s_list.iter().all(|&x| self.conj_sub(t, x) == Some(t)) {
            return Err(Error::InvalidInput("T is not normal in S".into()));
        }
        let carrier = self
            .group_set(&self.normalizer(t))
            .expect("ambient locality");
        Ok(from_root(self.root.clone(), self.prime, &carrier, DeltaMode::Derived("normalizer".into()), false, false))
    }

    /// Same carrier with objects replaced by `{P ≤ S : P^⋆ ∈ Δ}`.
    pub fn expand_delta(&self) -> Result<Locality> {
        self.require_ambient("object expansion")?;
        let omega = crate::omega::compute_omega(self);
        let delta: Vec<bool> = self
            .lat
            .ids()
            .map(|p| self.delta[omega.star(self, p)])
            .collect();
        let root = Root {
            group: self.root.group.clone(),
            lat: self.root.lat.clone(),
            pre: self.root.pre.clone(),
            delta,
        };
        let carrier = self.carrier_in_group().unwrap();
        Ok(from_root(Arc::new(root), self.prime, &carrier, DeltaMode::Derived("expansion".into()), false, false))
    }

    fn require_ambient(&self, what: &str) -> Result<()> {
        match self.realization {
            Realization::Ambient { .. } => Ok(()),
            Realization::Quotient { .. } => Err(Error::InvalidInput(format!(
                "{what} needs a locality realized in a group"
            ))),
        }
    }

    /// First failure of: closed under conjugation by carrier elements and
    /// under overgroups in `S`.
    pub fn f_closed_violation(&self, family: &[bool]) -> Option<String> {
        for x in self.lat.ids().filter(|&x| family[x]) {
            for y in self.lat.overgroups(x) {
                if !family[y] {
                    return Some(format!("overgroup {:?} of object {:?} missing", self.lat.set(y), self.lat.set(x)));
                }
            }
            for g in self.elements() {
                if let Some(y) = self.conj_sub(x, g) {
                    if !family[y] {
                        return Some(format!("conjugate of {:?} by {} missing", self.lat.set(x), self.label(g)));
                    }
                }
            }
        }
        None
    }
}

/// Joint summary used by [`validate_locality`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Joint {
    state: WordState,
    /// Image of each element of `S` under the word, or `NONE`.
    map: Vec<u32>,
    /// Objects from which a chain of object conjugations survives.
    chains: ElemSet,
}

/// Cap on the number of joint summaries explored by [`validate_locality`].
pub const VALIDATION_STATE_CAP: usize = 400_000;

/// Checks the locality axioms on `l`.
pub fn validate_locality(l: &Locality) -> Report {
    let mut r = Report::new();
    let lat = &l.lat;
    let n = l.n;
    r.case("identity-is-zero", l.mul(0, 0) == Some(0) && l.inv(0) == 0, || "identity".into());
    for g in l.elements() {
        r.case("inversion-involution", l.inv(l.inv(g)) == g, || l.label(g).into());
    }
    r.case("s-is-object", l.delta[lat.top()], || "S ∉ Δ".into());
    r.case("s-is-subgroup", is_subgroup(l, &l.s_set), || "S".into());
    r.case(
        "s-is-p-group",
        FiniteGroup::is_p_group_order(l.s_list.len(), l.prime),
        || format!("|S| = {}", l.s_list.len()),
    );
    // overgroup closure in the sense of objective partial groups
    for x in l.objects() {
        for g in l.elements() {
            let Some(xg) = l.conj_sub(x, g) else { continue };
            for y in l.objects() {
                if !lat.le(xg, y) {
                    continue;
                }
                for z in lat.overgroups(xg).filter(|&z| lat.le(z, y)) {
                    r.case("objects-overgroup-closed", l.delta[z], || {
                        format!("{:?} between {:?} and {:?}", lat.set(z), lat.set(xg), lat.set(y))
                    });
                }
            }
        }
    }
    if let Realization::Ambient { to_group, by_construction, .. } = &l.realization {
        let g = &l.root.group;
        let rl = &l.root.lat;
        let s_g = rl.set(rl.top());
        for x in rl.ids().filter(|&x| l.root.delta[x]) {
            for h in g.elements() {
                let img = g.conjugate_set(rl.set(x), h);
                if img.is_subset(s_g) {
                    let y = rl.id_of(&img).unwrap();
                    for z in rl.overgroups(y) {
                        r.case("objects-closed-in-group", l.root.delta[z], || {
                            format!("{:?} over {:?}", rl.set(z), img)
                        });
                    }
                }
            }
        }
        if *by_construction {
            let expect = g.set(g.elements().filter(|&h| {
                let s_sh = s_g.intersection(&g.conjugate_set(s_g, h));
                l.root.delta[rl.id_of(&s_sh).unwrap()]
            }));
            let have = g.set(to_group.iter().map(|&h| h as Elem));
            r.case("carrier-formula", expect == have, || "carrier differs from {g : S∩S^g ∈ Δ}".into());
        }
        for a in l.elements() {
            r.case("ambient-s_g", l.letters[a].sub as usize == l.sg[a] as usize, || l.label(a).into());
        }
    }
    for g in l.elements() {
        let sg = l.sg[g];
        r.case("s_g-is-object", sg != NONE && l.delta[sg as usize], || l.label(g).into());
        if sg == NONE {
            continue;
        }
        // conjugation by g is an isomorphism S_g -> S_{g⁻¹}
        let sgi = l.sg[l.inv(g)];
        let img: Vec<Elem> = lat.set(sg as usize).iter().map(|x| l.conj(x, g).unwrap()).collect();
        let hom = lat.set(sg as usize).iter().all(|x| {
            lat.set(sg as usize).iter().all(|y| {
                let xy = l.mul(x, y).unwrap();
                l.mul(l.conj(x, g).unwrap(), l.conj(y, g).unwrap()) == l.conj(xy, g)
            })
        });
        r.case(
            "conjugation-isomorphism",
            hom && sgi != NONE && l.set(img) == *lat.set(sgi as usize),
            || l.label(g).into(),
        );
    }

    // exhaustive comparison of the three domain criteria, by saturation
    let s_len = l.s_list.len();
    let obj = l.objects();
    let step = |j: &Joint, g: Elem| -> Joint {
        let map = j
            .map
            .iter()
            .map(|&y| {
                if y == NONE {
                    NONE
                } else {
                    l.sconj(y as Elem, g).map_or(NONE, |z| z as u32)
                }
            })
            .collect();
        Joint {
            state: l.root.compose(j.state, l.letters[g]),
            map,
            chains: advance_chains(l, &j.chains, g),
        }
    };
    let start = Joint {
        state: l.root.empty(),
        map: l.s_list.iter().map(|&x| x as u32).collect(),
        chains: ElemSet::from_iter(lat.len(), obj.iter().copied()),
    };
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, Vec::<Elem>::new())]);
    let mut truncated = false;
    while let Some((j, w)) = queue.pop_front() {
        let dom_set = l.set(
            (0..s_len)
                .filter(|&i| j.map[i] != NONE)
                .map(|i| l.s_list[i]),
        );
        let sw = lat.id_of(&dom_set);
        let in_d = l.state_in_domain(j.state);
        let by_sw = sw.is_some_and(|i| l.delta[i]);
        let by_chain = !j.chains.is_empty();
        r.case("s_w-is-subgroup", sw.is_some(), || format!("{w:?}"));
        r.case("domain-equals-s_w-criterion", in_d == by_sw, || format!("{w:?}"));
        r.case("domain-equals-chain-criterion", in_d == by_chain, || format!("{w:?}"));
        if let (Some(sw), Realization::Ambient { .. }) = (sw, &l.realization) {
            r.case("ambient-s_w", sw == j.state.sub as usize, || format!("{w:?}"));
        }
        if in_d {
            r.case("carrier-products", l.state_product(j.state).is_some(), || format!("{w:?}"));
        }
        if seen.len() > VALIDATION_STATE_CAP {
            truncated = true;
            continue;
        }
        for g in 0..n {
            let k = step(&j, g);
            if seen.insert(k.clone()) {
                let mut w2 = w.clone();
                w2.push(g);
                queue.push_back((k, w2));
            }
        }
    }
    r.case("domain-search-saturated", !truncated, || {
        format!("stopped after {VALIDATION_STATE_CAP} summaries")
    });

    // S is a maximal p-subgroup of the carrier
    let ns = l.normalizer(lat.top());
    // a larger p-subgroup would normalize S properly
    if ns.is_subset(&l.s_set) {
        r.case("s-maximal-p-subgroup", true, String::new);
    }
    for g in ns.iter().filter(|&g| !l.s_set.contains(g)) {
        let h = generated_partial_subgroup(l, l.s_list.iter().copied().chain([g]));
        let bigger_p = FiniteGroup::is_p_group_order(h.len(), l.prime) && is_subgroup(l, &h);
        r.case("s-maximal-p-subgroup", !bigger_p, || l.label(g).into());
    }
    r
}

/// Current objects of the object chains that survive appending `g`.
fn advance_chains(l: &Locality, current: &ElemSet, g: Elem) -> ElemSet {
    let mut out = ElemSet::new(l.lat.len());
    for x in current.iter() {
        if let Some(y) = l.conj_sub(x, g) {
            if l.delta[y] {
                out.insert(y);
            }
        }
    }
    out
}
