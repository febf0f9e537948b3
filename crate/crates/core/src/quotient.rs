//! Quotient localities `L/N`, projections and the correspondence checks.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::locality::{validate_locality, DeltaMode, Locality, Parts, Realization, SubLattice, NONE};
use crate::normal::{is_partial_normal, maximal_cosets, CosetPartition, PartialNormal};
use crate::omega::{compute_omega, subgroups_of_locality};
use crate::partial::{ProductTable, 
    check_axioms, check_domain_surjective, check_homomorphism, generated_partial_subgroup, is_partial_subgroup,
    kernel, PartialGroup, Word,
};
use crate::report::Report;
use crate::Elem;

/// Largest number of partial subgroups enumerated on either side of the
/// correspondence.
pub const CORRESPONDENCE_CAP: usize = 5000;

/// A homomorphism of localities given on elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub map: Vec<Elem>,
}

impl Projection {
    pub fn apply_set(&self, target: &Locality, set: &ElemSet) -> ElemSet {
        target.set(set.iter().map(|g| self.map[g]))
    }

    pub fn preimage(&self, source: &Locality, set: &ElemSet) -> ElemSet {
        source.set(source.elements().filter(|&g| set.contains(self.map[g])))
    }
}

/// `L/N` with the canonical projection `ρ`.
pub fn quotient(l: &Arc<Locality>, pn: &PartialNormal) -> Result<(Locality, Projection)> {
    if !is_partial_normal(l, &pn.members) {
        return Err(Error::InvalidInput("not a partial normal subgroup".into()));
    }
    let cp = maximal_cosets(l, pn)?;
    let m = cp.blocks.len();
    let bo = |g: Elem| cp.block_of[g];
    let inv: Vec<u32> = cp.reps.iter().map(|&f| bo(l.inv(f)) as u32).collect();
    well_defined(l, &cp)?;

    let s_list: Vec<Elem> = (0..m).filter(|&b| !cp.blocks[b].is_disjoint(l.s())).collect();
    let lat_l = l.lattice();
    let image = |x: &ElemSet| ElemSet::from_iter(m, x.iter().map(bo));
    let mut images: BTreeMap<ElemSet, bool> = BTreeMap::new();
    for p in lat_l.ids() {
        let e = images.entry(image(lat_l.set(p))).or_insert(false);
        *e |= l.is_object(p);
    }
    let lat = SubLattice::new(images.keys().cloned().collect());
    let delta: Vec<bool> = lat.ids().map(|i| images[lat.set(i)]).collect();
    let letters = cp.reps.iter().map(|&f| l.letters[f]).collect();
    let state_to_elem = l
        .state_to_elem
        .iter()
        .map(|&e| if e == NONE { NONE } else { bo(e as Elem) as u32 })
        .collect();
    let labels = cp.reps.iter().map(|&f| format!("[{}]", l.label(f))).collect();
    let q = Locality::assemble(Parts {
        prime: l.prime(),
        labels,
        inv,
        s_list,
        lat,
        delta,
        delta_mode: DeltaMode::Derived("quotient".into()),
        auto_closed: false,
        root: l.root.clone(),
        letters,
        state_to_elem,
        realization: Realization::Quotient {
            parent: l.clone(),
            block_of: cp.block_of.iter().map(|&b| b as u32).collect(),
            reps: cp.reps.iter().map(|&f| f as u32).collect(),
            blocks: cp.blocks.clone(),
        },
    });
    let proj = Projection { map: cp.block_of };
    Ok((q, proj))
}

/// Products and inverses of blocks do not depend on the representatives.
fn well_defined(l: &Locality, cp: &CosetPartition) -> Result<()> {
    for a in l.elements() {
        let (ba, bai) = (cp.block_of[a], cp.block_of[l.inv(a)]);
        if cp.block_of[l.inv(cp.reps[ba])] != bai {
            return Err(Error::InvalidInput(format!("inverse of the coset of {} is ill-defined", l.label(a))));
        }
        for b in l.elements() {
            let Some(ab) = l.mul(a, b) else { continue };
            let (fa, fb) = (cp.reps[ba], cp.reps[cp.block_of[b]]);
            match l.mul(fa, fb) {
                Some(c) if cp.block_of[c] == cp.block_of[ab] => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "coset product of ({}, {}) is ill-defined",
                        l.label(a),
                        l.label(b)
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Section of a surjective map: the least preimage of each target element
/// that lies in `prefer`, falling back to the least preimage.
pub fn section(source: &Locality, map: &[Elem], target_size: usize, prefer: &ElemSet) -> Vec<Elem> {
    let mut out = alloc::vec![usize::MAX; target_size];
    for g in source.elements().filter(|&g| prefer.contains(g)) {
        if out[map[g]] == usize::MAX {
            out[map[g]] = g;
        }
    }
    for g in source.elements() {
        if out[map[g]] == usize::MAX {
            out[map[g]] = g;
        }
    }
    out
}

/// `β : L → L'` is a homomorphism, maps `D` onto `D'` and `Δ` onto `Δ'`.
/// `lifts` is a section through elements that are `↑`-maximal relative
/// to the kernel.
pub fn check_projection(a: &Locality, b: &Locality, map: &[Elem], lifts: &[Elem], max_len: usize) -> Report {
    let mut r = Report::new();
    let hom = check_homomorphism(a, b, map, max_len);
    r.case("identity-preserved", hom.identity_preserved, String::new);
    r.case("domain-preserved", hom.domain_failures.is_empty(), || format!("{:?}", hom.domain_failures));
    r.case("products-preserved", hom.product_failures.is_empty(), || format!("{:?}", hom.product_failures));
    let surj = a.elements().map(|g| map[g]).collect::<BTreeSet<_>>().len() == b.size();
    r.case("surjective", surj, String::new);
    if surj {
        let bad = check_domain_surjective(a, b, map, lifts, max_len);
        r.case("domain-onto", bad.is_empty(), || format!("{:?}", &bad[..bad.len().min(4)]));
    }
    let mut imgs: BTreeSet<ElemSet> = BTreeSet::new();
    for p in a.objects() {
        imgs.insert(b.set(a.lattice().set(p).iter().map(|x| map[x])));
    }
    let targets: BTreeSet<ElemSet> = b.objects().into_iter().map(|q| b.lattice().set(q).clone()).collect();
    r.case("objects-onto", imgs == targets, String::new);
    r
}

/// Joint summaries over `↑`-maximal words: ambient state of `w` and the
/// conjugation map of `w̄` on `S̄`.
fn lifted_words(l: &Locality, q: &Locality, up_max: &ElemSet, map: &[Elem], max_len: usize) -> Vec<(Word, crate::locality::WordState, Vec<u32>)> {
    let sq = q.s_elements().to_vec();
    let start = (l.state(&[]), sq.iter().map(|&x| x as u32).collect::<Vec<u32>>());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut out = alloc::vec![(Word::new(), start.0, start.1)];
    let letters: Vec<Elem> = up_max.iter().collect();
    let mut lo = 0;
    for _ in 0..max_len {
        let hi = out.len();
        for i in lo..hi {
            for &f in &letters {
                let (w, st, m) = &out[i];
                let st2 = l.state_of_appended(*st, f);
                let g = map[f];
                let m2: Vec<u32> = m
                    .iter()
                    .map(|&y| {
                        if y == NONE {
                            NONE
                        } else {
                            q.sconj(y as Elem, g).map_or(NONE, |z| z as u32)
                        }
                    })
                    .collect();
                if seen.insert((st2, m2.clone())) {
                    let mut w2 = w.clone();
                    w2.push(f);
                    out.push((w2, st2, m2));
                }
            }
        }
        if out.len() == hi {
            break;
        }
        lo = hi;
    }
    out
}

/// Fibers, `S_w` images, domains and normalizer surjections of `ρ`.
pub fn quotient_properties(l: &Locality, pn: &PartialNormal, q: &Locality, proj: &Projection, max_len: usize) -> Report {
    let mut r = Report::new();
    let map = &proj.map;
    let ker = kernel(q, map);
    r.case("kernel-is-n", ker == pn.members, String::new);
    for b in q.elements() {
        let fiber = l.set(l.elements().filter(|&g| map[g] == b));
        let rep = fiber.iter().find(|&g| pn.up_max.contains(g));
        let ok = rep.is_some_and(|f| crate::normal::left_coset(l, &pn.members, f) == fiber);
        r.case("fibers-are-maximal-cosets", ok, || q.label(b).into());
    }
    let lifts = section(l, map, q.size(), &pn.up_max);
    r.merge("projection", check_projection(l, q, map, &lifts, max_len));

    let sq = q.s_elements().to_vec();
    for (w, st, m) in lifted_words(l, q, &pn.up_max, map, max_len) {
        let sw_img = l.set_of_state(st).map(|x| q.set(x.iter().map(|y| map[y])));
        let sbar = q.set((0..sq.len()).filter(|&i| m[i] != NONE).map(|i| sq[i]));
        r.case("s_w-image", sw_img.as_ref() == Some(&sbar), || format!("{w:?}"));
        let in_d = l.state_in_domain(st);
        let in_dbar = q.sub_id(&sbar).is_some_and(|i| q.is_object(i));
        r.case("domain-lifts", in_d == in_dbar, || format!("{w:?}"));
    }

    let lat = l.lattice();
    let full = l.full();
    let qfull = q.full();
    for p in l.objects().into_iter().filter(|&p| lat.le(pn.t, p)) {
        let pbar = q.sub_id(&proj.apply_set(q, lat.set(p))).expect("image of a subgroup of S");
        for qq in l.objects().into_iter().filter(|&x| lat.le(pn.t, x)) {
            let qbar = q.sub_id(&proj.apply_set(q, lat.set(qq))).expect("image of a subgroup of S");
            let src = l.transporter(p, qq, &full);
            let tgt = q.transporter(pbar, qbar, &qfull);
            r.case("transporter-onto", proj.apply_set(q, &src) == tgt, || {
                format!("{:?} -> {:?}", lat.set(p), lat.set(qq))
            });
            if p == qq {
                let hom = src.iter().all(|a| {
                    src.iter().all(|b| {
                        l.mul(a, b)
                            .is_some_and(|ab| q.mul(map[a], map[b]) == Some(map[ab]))
                    })
                });
                r.case("normalizer-epimorphism", hom, || format!("{:?}", lat.set(p)));
            }
        }
    }
    let iso = crate::partial::is_isomorphism(l, q, map, max_len);
    r.case("isomorphism-iff-trivial-kernel", iso == (pn.members.len() == 1), String::new);
    r
}

/// Validation suite on `L/N`: locality checks, axioms and `ρ`.
pub fn check_quotient(l: &Arc<Locality>, pn: &PartialNormal, max_len: usize) -> Report {
    let mut r = Report::new();
    let (q, proj) = match quotient(l, pn) {
        Ok(x) => x,
        Err(e) => {
            r.fail("quotient-built", format!("{e}"));
            return r;
        }
    };
    r.case("quotient-built", true, String::new);
    r.merge("locality", validate_locality(&q));
    let ax = check_axioms(&q, max_len);
    r.case("axioms", ax.is_empty(), || format!("{:?}", ax.rules_violated()));
    r.merge("properties", quotient_properties(l, pn, &q, &proj, max_len.min(4)));
    r
}

/// `γ : L/N → L'` with `ρ∘γ = β`, for `N ⊆ Ker(β)`.
pub fn first_isomorphism(
    l: &Locality,
    beta: &Projection,
    target: &Locality,
    n: &ElemSet,
    proj: &Projection,
    q: &Locality,
) -> Result<Projection> {
    let ker = kernel(target, &beta.map);
    if !n.is_subset(&ker) {
        return Err(Error::InvalidInput("N is not contained in the kernel".into()));
    }
    let mut gamma = alloc::vec![usize::MAX; q.size()];
    for g in l.elements() {
        let b = proj.map[g];
        if gamma[b] == usize::MAX {
            gamma[b] = beta.map[g];
        } else if gamma[b] != beta.map[g] {
            return Err(Error::InvalidInput(format!("β is not constant on the coset of {}", l.label(g))));
        }
    }
    Ok(Projection { map: gamma })
}

/// First isomorphism theorem and factorization through iterated quotients
/// for `N ⊆ M` partial normal.
pub fn check_first_isomorphism(l: &Arc<Locality>, n: &PartialNormal, m: &PartialNormal, max_len: usize) -> Report {
    let mut r = Report::new();
    let built = quotient(l, n).and_then(|a| quotient(l, m).map(|b| (a, b)));
    let ((qn, pn_proj), (qm, pm_proj)) = match built {
        Ok(x) => x,
        Err(e) => {
            r.fail("quotients-built", format!("{e}"));
            return r;
        }
    };
    let gamma = match first_isomorphism(l, &pm_proj, &qm, &n.members, &pn_proj, &qn) {
        Ok(g) => g,
        Err(e) => {
            r.fail("gamma-well-defined", format!("{e}"));
            return r;
        }
    };
    r.case("gamma-well-defined", true, String::new);
    // γ is a projection; lifts go through reps of L/N, which are ↑-maximal
    // relative to the kernel of γ when they are relative to M
    let qn_omega = compute_omega(&qn);
    let kg = kernel(&qm, &gamma.map);
    let kg_pn = PartialNormal::new(&qn, &qn_omega, kg.clone());
    r.case("gamma-kernel-partial-normal", kg_pn.is_ok(), String::new);
    if let Ok(kg_pn) = &kg_pn {
        let lifts = section(&qn, &gamma.map, qm.size(), &kg_pn.up_max);
        r.merge("gamma", check_projection(&qn, &qm, &gamma.map, &lifts, max_len));
        r.case("gamma-kernel-is-image-of-m", kg == pn_proj.apply_set(&qn, &m.members), String::new);
        // (L/N)/(M/N) against L/M
        let qn_arc = Arc::new(qn.clone());
        match quotient(&qn_arc, kg_pn) {
            Ok((qq, qq_proj)) => {
                let ok = qq.size() == qm.size()
                    && l.elements().all(|g| {
                        let a = qq_proj.map[pn_proj.map[g]];
                        let b = pm_proj.map[g];
                        l.elements().all(|h| (qq_proj.map[pn_proj.map[h]] == a) == (pm_proj.map[h] == b))
                    });
                r.case("iterated-quotient-factorization", ok, String::new);
            }
            Err(e) => r.fail("iterated-quotient-factorization", format!("{e}")),
        }
    }
    let iso = gamma.map.iter().collect::<BTreeSet<_>>().len() == gamma.map.len()
        && crate::partial::is_isomorphism(&qn, &qm, &gamma.map, max_len);
    r.case("isomorphism-iff-kernel", iso == (n.members == m.members), String::new);
    r
}

/// Partial subgroups of `p` containing `base`, by one-element extension.
pub fn partial_subgroups_over<P: PartialGroup + ?Sized>(p: &P, base: &ElemSet, cap: usize) -> Option<Vec<ElemSet>> {
    let table = ProductTable::new(p);
    let start = generated_partial_subgroup(p, base.iter());
    let mut found = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for g in p.elements() {
            if h.contains(g) || table.inv(g) < g {
                continue;
            }
            let k = table.extend(&h, [g]);
            if found.insert(k.clone()) {
                if found.len() > cap {
                    return None;
                }
                queue.push_back(k);
            }
        }
    }
    Some(found.into_iter().collect())
}

/// Image and preimage are mutually inverse bijections between partial
/// subgroups containing `N` and partial subgroups of `L/N`, preserving
/// normality both ways.
pub fn subgroup_correspondence(l: &Locality, pn: &PartialNormal, q: &Locality, proj: &Projection) -> Result<Report> {
    let mut r = Report::new();
    let ups = partial_subgroups_over(l, &pn.members, CORRESPONDENCE_CAP)
        .ok_or_else(|| Error::Resource("too many partial subgroups over N".into()))?;
    let downs = partial_subgroups_over(q, &q.set([0]), CORRESPONDENCE_CAP)
        .ok_or_else(|| Error::Resource("too many partial subgroups of the quotient".into()))?;
    let mut images = BTreeSet::new();
    for h in &ups {
        let img = proj.apply_set(q, h);
        r.case("image-is-partial-subgroup", is_partial_subgroup(q, &img), || format!("{h:?}"));
        r.case("preimage-of-image", proj.preimage(l, &img) == *h, || format!("{h:?}"));
        r.case(
            "normality-corresponds",
            is_partial_normal(l, h) == is_partial_normal(q, &img),
            || format!("{h:?}"),
        );
        images.insert(img);
    }
    for hb in &downs {
        let pre = proj.preimage(l, hb);
        r.case("preimage-is-partial-subgroup", is_partial_subgroup(l, &pre), || format!("{hb:?}"));
        r.case("image-of-preimage", proj.apply_set(q, &pre) == *hb, || format!("{hb:?}"));
    }
    let downs: BTreeSet<ElemSet> = downs.into_iter().collect();
    r.case("bijection", images == downs, || format!("{} vs {}", images.len(), downs.len()));
    Ok(r)
}

/// Deterministic sample of subsets of `L`.
pub fn sample_subsets(l: &Locality, count: usize) -> Vec<ElemSet> {
    let n = l.size() as u64;
    let mut out = alloc::vec![l.full(), l.s().clone(), l.set([0])];
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..count {
        let mut set = ElemSet::new(l.size());
        for _ in 0..(1 + (state % n.max(1)) / 2) {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            set.insert(((state >> 33) % n) as Elem);
        }
        out.push(set);
    }
    out
}

/// Images of intersections, Sylow images in partial normal overgroups and
/// the restriction of `ρ` to `N_L(T)`.
pub fn check_image_lemmas(
    l: &Locality,
    pn: &PartialNormal,
    q: &Locality,
    proj: &Projection,
    normals_over: &[ElemSet],
    max_len: usize,
) -> Result<Report> {
    let mut r = Report::new();
    let hs = partial_subgroups_over(l, &pn.members, CORRESPONDENCE_CAP)
        .ok_or_else(|| Error::Resource("too many partial subgroups over N".into()))?;
    for x in sample_subsets(l, 12) {
        let xr = proj.apply_set(q, &x);
        for h in &hs {
            let lhs = proj.apply_set(q, &x.intersection(h));
            r.case("image-of-intersection", lhs == xr.intersection(&proj.apply_set(q, h)), || {
                format!("{x:?} ∩ {h:?}")
            });
        }
    }
    let p = l.prime();
    for m in normals_over {
        let mbar = proj.apply_set(q, m);
        let um = proj.apply_set(q, &m.intersection(l.s()));
        let ps = subgroups_of_locality(
            q,
            |g| mbar.contains(g),
            |h| FiniteGroup::is_p_group_order(h.len(), p),
            CORRESPONDENCE_CAP,
        );
        let ok = ps.is_some_and(|ps| !ps.iter().any(|h| um.is_subset(h) && *h != um));
        r.case("sylow-image-maximal", ok, || format!("{m:?}"));
    }
    if let Realization::Ambient { .. } = l.realization() {
        let lt = l.normalizer_locality(pn.t)?;
        let map: Vec<Elem> = lt
            .elements()
            .map(|e| proj.map[l.from_group(lt.to_group(e).unwrap()).unwrap()])
            .collect();
        let prefer = lt.set(lt.elements().filter(|&e| {
            pn.up_max.contains(l.from_group(lt.to_group(e).unwrap()).unwrap())
        }));
        let lifts = section(&lt, &map, q.size(), &prefer);
        r.merge("normalizer-of-t", check_projection(&lt, q, &map, &lifts, max_len));
    }
    Ok(r)
}

impl Locality {
    pub(crate) fn state_of_appended(&self, s: crate::locality::WordState, g: Elem) -> crate::locality::WordState {
        self.root.compose(s, self.letters[g])
    }

    /// `S_w` as a set of local elements, from an ambient summary.
    pub(crate) fn set_of_state(&self, s: crate::locality::WordState) -> Option<ElemSet> {
        let sub = self.root_sub_image(s.sub as usize)?;
        Some(self.lattice().set(sub).clone())
    }
}
