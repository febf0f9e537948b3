//! Partial normal subgroups, the `↑`-relation, maximal cosets and the
//! Frattini and splitting checks.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::locality::{Locality, SubId};
use crate::omega::OmegaPoset;
use crate::partial::is_partial_normal_in;
use crate::report::Report;
use crate::Elem;

/// Largest number of conjugation classes for which the exhaustive union
/// filter in [`enumerate_partial_normals`] runs.
pub const MAX_CLASSES: usize = 18;

/// `N ⊴ L` with `T = S ∩ N` and the `↑`-maximal elements of `L` relative
/// to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialNormal {
    pub members: ElemSet,
    pub t: SubId,
    pub up_max: ElemSet,
}

impl PartialNormal {
    pub fn new(l: &Locality, omega: &OmegaPoset, members: ElemSet) -> Result<Self> {
        if members.capacity() != l.size() || !is_partial_normal(l, &members) {
            return Err(Error::InvalidInput("not a partial normal subgroup".into()));
        }
        let t = l
            .sub_id(&members.intersection(l.s()))
            .expect("S ∩ N is a subgroup of S");
        let up_max = up_maximal_elements(l, omega, &members);
        Ok(PartialNormal { members, t, up_max })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn is_partial_normal(l: &Locality, n: &ElemSet) -> bool {
    n.capacity() == l.size() && is_partial_normal_in(l, n)
}

/// Smallest partial normal subgroup containing `seed`.
pub fn normal_closure(l: &Locality, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    let mut set = l.set([0]);
    let mut members = alloc::vec![0];
    let mut queue: VecDeque<Elem> = VecDeque::new();
    let add = |x: Elem, set: &mut ElemSet, members: &mut Vec<Elem>, queue: &mut VecDeque<Elem>| {
        if set.insert(x) {
            members.push(x);
            queue.push_back(x);
        }
    };
    for x in seed {
        add(x, &mut set, &mut members, &mut queue);
    }
    while let Some(a) = queue.pop_front() {
        add(l.inv(a), &mut set, &mut members, &mut queue);
        for g in l.elements() {
            if let Some(y) = l.conj(a, g) {
                add(y, &mut set, &mut members, &mut queue);
            }
        }
        let snapshot = members.clone();
        for b in snapshot {
            for c in [l.mul(a, b), l.mul(b, a)].into_iter().flatten() {
                add(c, &mut set, &mut members, &mut queue);
            }
        }
    }
    set
}

/// Classes of the equivalence generated by `x ~ x⁻¹` and `x ~ x^g`.
pub fn conjugation_classes(l: &Locality) -> Vec<ElemSet> {
    let n = l.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let z = p[y];
            p[y] = r;
            y = z;
        }
        r
    }
    let union = |a: usize, b: usize, p: &mut Vec<usize>| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for x in 0..n {
        union(x, l.inv(x), &mut parent);
        for g in 0..n {
            if let Some(y) = l.conj(x, g) {
                union(x, y, &mut parent);
            }
        }
    }
    let mut classes: alloc::collections::BTreeMap<usize, ElemSet> = Default::default();
    for x in 0..n {
        let r = find(&mut parent, x);
        classes.entry(r).or_insert_with(|| ElemSet::new(n)).insert(x);
    }
    classes.into_values().collect()
}

/// Result of [`enumerate_partial_normals`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalEnumeration {
    /// Sorted by size, then by member list.
    pub normals: Vec<ElemSet>,
    /// Whether the exhaustive filter over unions of classes ran.
    pub complete: bool,
    /// Whether the closure-generated list matched the exhaustive one.
    pub closure_agrees: bool,
}

/// Normal closures of single elements, closed under products; confirmed
/// against all normal unions of conjugation classes when there are at most
/// [`MAX_CLASSES`] nontrivial classes.
pub fn enumerate_partial_normals(l: &Locality) -> NormalEnumeration {
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    for g in l.elements() {
        found.insert(normal_closure(l, [g]));
    }
    loop {
        let cur: Vec<ElemSet> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                let prod = normal_closure(l, crate::products::product_set(l, a, b).iter());
                grew |= found.insert(prod);
            }
        }
        if !grew {
            break;
        }
    }
    let classes: Vec<ElemSet> = conjugation_classes(l)
        .into_iter()
        .filter(|c| !c.contains(0))
        .collect();
    let mut exhaustive: Option<BTreeSet<ElemSet>> = None;
    if classes.len() <= MAX_CLASSES {
        let mut out = BTreeSet::new();
        for mask in 0u32..(1u32 << classes.len()) {
            let mut set = l.set([0]);
            for (i, c) in classes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    set.union_with(c);
                }
            }
            if is_product_closed(l, &set) {
                out.insert(set);
            }
        }
        exhaustive = Some(out);
    }
    let complete = exhaustive.is_some();
    let closure_agrees = exhaustive.as_ref().is_none_or(|e| e == &found);
    let mut normals: Vec<ElemSet> = exhaustive.unwrap_or(found).into_iter().collect();
    normals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    NormalEnumeration {
        normals,
        complete,
        closure_agrees,
    }
}

fn is_product_closed(l: &Locality, set: &ElemSet) -> bool {
    let v = set.to_vec();
    v.iter()
        .all(|&a| v.iter().all(|&b| l.mul(a, b).is_none_or(|c| set.contains(c))))
}

/// The two forms of `(f,P) ↑ (g,Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpVerdict {
    /// Some `x ∈ N_N(P,Q)`, `y ∈ N_N(P^f,Q^g)` with `xg = fy`.
    pub plain: bool,
    /// Some such `x, y` with `(x,g,y⁻¹,f⁻¹) ∈ D` via `P` and product `𝟙`.
    pub word_form: bool,
}

/// Decides `(f,P) ↑ (g,Q)` relative to `N` by search over `x, y ∈ N`.
pub fn up_related(l: &Locality, n: &ElemSet, f: Elem, p: SubId, g: Elem, q: SubId) -> Result<UpVerdict> {
    let lat = l.lattice();
    let pre = |h: Elem, x: SubId| l.is_object(x) && lat.le(x, l.s_g(h));
    if f >= l.size() || g >= l.size() || !pre(f, p) || !pre(g, q) {
        return Err(Error::InvalidInput("pairs must lie in L∘Δ".into()));
    }
    let pf = l.conj_sub(p, f).unwrap();
    let qg = l.conj_sub(q, g).unwrap();
    let xs: Vec<Elem> = n
        .iter()
        .filter(|&x| l.conj_sub(p, x).is_some_and(|r| lat.le(r, q)))
        .collect();
    let ys: Vec<Elem> = n
        .iter()
        .filter(|&y| l.conj_sub(pf, y).is_some_and(|r| lat.le(r, qg)))
        .collect();
    let mut v = UpVerdict {
        plain: false,
        word_form: false,
    };
    for &x in &xs {
        for &y in &ys {
            let xg = l.mul(x, g);
            if !v.plain && xg.is_some() && xg == l.mul(f, y) {
                v.plain = true;
            }
            if !v.word_form {
                let w = [x, g, l.inv(y), l.inv(f)];
                if lat.le(p, l.s_w(&w)?) && l.product_of(&w) == Some(0) {
                    v.word_form = true;
                }
            }
            if v.plain && v.word_form {
                return Ok(v);
            }
        }
    }
    Ok(v)
}

/// `↑`-maximal elements relative to `N` (with `T = S ∩ N`).
///
/// `f` fails to be maximal exactly when some `x, y ∈ N` give
/// `g = x⁻¹(fy)` with `xg = fy`, `S_f^x ≤ S_g`, `S_f^{fy} ≤ (S_g)^g` and
/// `dim(S_g) > dim(S_f)`: the target `Q` may always be enlarged to `S_g`.
pub fn up_maximal_elements(l: &Locality, omega: &OmegaPoset, n: &ElemSet) -> ElemSet {
    let dims = omega.dim_table(l);
    let lat = l.lattice();
    let nv = n.to_vec();
    let mut out = ElemSet::new(l.size());
    'f: for f in l.elements() {
        let p = l.s_g(f);
        let d = dims[p];
        let pf = l.conj_sub(p, f).unwrap();
        let xs: Vec<(Elem, SubId)> = nv
            .iter()
            .filter_map(|&x| l.conj_sub(p, x).map(|r| (x, r)))
            .collect();
        let ys: Vec<(Elem, Elem, SubId)> = nv
            .iter()
            .filter_map(|&y| {
                let r = l.conj_sub(pf, y)?;
                Some((y, l.mul(f, y)?, r))
            })
            .collect();
        for &(x, px) in &xs {
            let xi = l.inv(x);
            for &(_, fy, pfy) in &ys {
                let Some(g) = l.mul(xi, fy) else { continue };
                let sg = l.s_g(g);
                if dims[sg] <= d || l.mul(x, g) != Some(fy) || !lat.le(px, sg) {
                    continue;
                }
                if lat.le(pfy, l.conj_sub(sg, g).unwrap()) {
                    continue 'f;
                }
            }
        }
        out.insert(f);
    }
    out
}

/// `↑`-maximal elements straight from the definition: every `(g,Q)` in
/// `L∘Δ` is tested with [`up_related`]. Also returns the pairs on which the
/// two forms of the relation disagree.
pub fn up_maximal_by_definition(
    l: &Locality,
    omega: &OmegaPoset,
    n: &ElemSet,
) -> (ElemSet, Vec<(Elem, Elem, SubId)>) {
    let dims = omega.dim_table(l);
    let lat = l.lattice();
    let objects = l.objects();
    let mut out = ElemSet::new(l.size());
    let mut disagreements = Vec::new();
    for f in l.elements() {
        let p = l.s_g(f);
        let mut maximal = true;
        for g in l.elements() {
            for &q in objects.iter().filter(|&&q| lat.le(q, l.s_g(g))) {
                let v = up_related(l, n, f, p, g, q).expect("pairs in L∘Δ");
                if v.plain != v.word_form {
                    disagreements.push((f, g, q));
                }
                if v.plain && dims[q] != dims[p] {
                    maximal = false;
                }
            }
        }
        if maximal {
            out.insert(f);
        }
    }
    (out, disagreements)
}

/// The partition of `L` into maximal cosets `Nf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    /// Sorted by least element; block `0` is `N`.
    pub blocks: Vec<ElemSet>,
    /// Least `↑`-maximal element of each block.
    pub reps: Vec<Elem>,
    pub block_of: Vec<usize>,
}

/// `Nf = {Π(x,f) : x ∈ N, (x,f) ∈ D}`.
pub fn left_coset(l: &Locality, n: &ElemSet, f: Elem) -> ElemSet {
    l.set(n.iter().filter_map(|x| l.mul(x, f)))
}

pub fn right_coset(l: &Locality, n: &ElemSet, f: Elem) -> ElemSet {
    l.set(n.iter().filter_map(|x| l.mul(f, x)))
}

/// `L/N`. Fails if the cosets of `↑`-maximal elements do not partition `L`.
pub fn maximal_cosets(l: &Locality, pn: &PartialNormal) -> Result<CosetPartition> {
    let mut blocks: BTreeSet<(Elem, ElemSet)> = BTreeSet::new();
    for f in pn.up_max.iter() {
        let b = left_coset(l, &pn.members, f);
        blocks.insert((b.first().expect("coset contains f"), b));
    }
    let blocks: Vec<ElemSet> = blocks.into_iter().map(|(_, b)| b).collect();
    let mut block_of = alloc::vec![usize::MAX; l.size()];
    for (i, b) in blocks.iter().enumerate() {
        for g in b.iter() {
            if block_of[g] != usize::MAX {
                return Err(Error::InvalidInput(format!("maximal cosets overlap at {}", l.label(g))));
            }
            block_of[g] = i;
        }
    }
    if let Some(g) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidInput(format!("{} lies in no maximal coset", l.label(g))));
    }
    let reps = blocks
        .iter()
        .map(|b| b.iter().find(|&g| pn.up_max.contains(g)).unwrap())
        .collect();
    Ok(CosetPartition {
        blocks,
        reps,
        block_of,
    })
}

/// Properties of `↑`-maximality, cosets and `T` for one partial normal
/// subgroup.
pub fn check_cosets(l: &Locality, pn: &PartialNormal, cp: &CosetPartition) -> Report {
    let mut r = Report::new();
    let n = &pn.members;
    let lat = l.lattice();
    let nls = l.normalizer(l.s_id());
    for f in nls.iter() {
        r.case("normalizer-of-s-up-maximal", pn.up_max.contains(f), || l.label(f).into());
    }
    for f in pn.up_max.iter() {
        r.case("up-maximal-inverse-closed", pn.up_max.contains(l.inv(f)), || l.label(f).into());
        r.case("t-below-s_g", lat.le(pn.t, l.s_g(f)), || l.label(f).into());
        let nf = left_coset(l, n, f);
        let fnn = right_coset(l, n, f);
        let nfn = l.set(n.iter().flat_map(|x| {
            n.iter()
                .filter_map(move |y| l.product_of(&[x, f, y]))
        }));
        r.case("coset-two-sided", nf == fnn && nf == nfn, || l.label(f).into());
    }
    for t in l.elements() {
        r.case("up-maximal-closed-under-s", !l.s().contains(t) || pn.up_max.contains(t), || {
            l.label(t).into()
        });
    }
    r.case("identity-block-is-n", cp.blocks[0] == *n, String::new);
    for (i, b) in cp.blocks.iter().enumerate() {
        let f = cp.reps[i];
        for g in l.elements() {
            let rel = up_related(l, n, g, l.s_g(g), f, l.s_g(f)).expect("pairs in L∘Δ");
            r.case("up-relation-forms-agree", rel.plain == rel.word_form, || {
                format!("({}, {})", l.label(g), l.label(f))
            });
            r.case("coset-membership-is-up-relation", rel.plain == b.contains(g), || {
                format!("({}, {})", l.label(g), l.label(f))
            });
        }
    }
    r.case(
        "blocks-partition",
        cp.blocks.iter().map(ElemSet::len).sum::<usize>() == l.size(),
        String::new,
    );
    r
}

/// `L = N Λ = Λ N` with `Λ` the `↑`-maximal elements of `N_L(T)`.
pub fn check_frattini(l: &Locality, pn: &PartialNormal) -> Report {
    let mut r = Report::new();
    let nlt = l.normalizer(pn.t);
    let lam: Vec<Elem> = pn.up_max.iter().filter(|&g| nlt.contains(g)).collect();
    let n = pn.members.to_vec();
    for f in l.elements() {
        let left = n.iter().any(|&x| lam.iter().any(|&g| l.mul(x, g) == Some(f)));
        let right = n.iter().any(|&y| lam.iter().any(|&g| l.mul(g, y) == Some(f)));
        r.case("frattini-left", left, || l.label(f).into());
        r.case("frattini-right", right, || l.label(f).into());
    }
    r
}

/// `S_{(x,f)} = S_{xf} = S_{(f,x^f)}` for `x ∈ N`, `f` `↑`-maximal and
/// `(x,f) ∈ D`.
pub fn check_splitting(l: &Locality, pn: &PartialNormal) -> Report {
    let mut r = Report::new();
    r.touch("splitting");
    for x in pn.members.iter() {
        for f in pn.up_max.iter() {
            let Some(xf) = l.mul(x, f) else { continue };
            let a = l.s_w(&[x, f]).ok();
            let b = Some(l.s_g(xf));
            let c = l.conj(x, f).and_then(|y| l.s_w(&[f, y]).ok());
            r.case("splitting", a == b && b == c, || format!("({}, {})", l.label(x), l.label(f)));
        }
    }
    r
}

impl Locality {
    /// `Π(w)` through the word summary.
    pub fn product_of(&self, w: &[Elem]) -> Option<Elem> {
        self.state_product(self.state(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::omega::compute_omega;

    #[test]
    fn extremes() {
        let l = catalog::gl32_small().unwrap();
        let om = compute_omega(&l);
        let one = PartialNormal::new(&l, &om, l.set([0])).unwrap();
        assert_eq!(one.up_max, l.full());
        let cp = maximal_cosets(&l, &one).unwrap();
        assert_eq!(cp.blocks.len(), l.size());
        let all = PartialNormal::new(&l, &om, l.full()).unwrap();
        let cp = maximal_cosets(&l, &all).unwrap();
        assert_eq!(cp.blocks.len(), 1);
        assert_eq!(normal_closure(&l, []), l.set([0]));
    }

    #[test]
    fn fast_up_maximal_matches_definition() {
        for name in ["delta-s", "dihedral-demo", "gl32-small"] {
            let l = catalog::locality(name).unwrap();
            let om = compute_omega(&l);
            for n in enumerate_partial_normals(&l).normals {
                let pn = PartialNormal::new(&l, &om, n.clone()).unwrap();
                let (slow, dis) = up_maximal_by_definition(&l, &om, &n);
                assert!(dis.is_empty(), "{name}");
                assert_eq!(pn.up_max, slow, "{name} {n:?}");
            }
        }
    }

    #[test]
    fn enumeration_is_confirmed() {
        for name in ["delta-s", "dihedral-demo", "gl32-small"] {
            let l = catalog::locality(name).unwrap();
            let e = enumerate_partial_normals(&l);
            assert!(e.complete && e.closure_agrees, "{name}");
            assert!(e.normals.contains(&l.set([0])));
            assert!(e.normals.contains(&l.full()));
        }
    }
}
