//! Brute-force reference computations on raw permutations.
//!
//! Nothing here uses the library. Elements are sorted by cycle string, so
//! "least" always means least cycle string.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

pub type Set = BTreeSet<usize>;

pub fn cycle_string(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x] as usize;
        }
        if cyc.len() > 1 {
            s.push('(');
            s.push_str(&cyc.join(" "));
            s.push(')');
        }
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// 1-based cycles.
pub fn perm(n: usize, cycles: &[&[u8]]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] as usize - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

pub struct Grp {
    pub perms: Vec<Vec<u8>>,
    pub names: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl Grp {
    pub fn generate(gens: &[Vec<u8>]) -> Grp {
        let n = gens[0].len();
        let id: Vec<u8> = (0..n as u8).collect();
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let b: Vec<u8> = (0..n).map(|i| g[a[i] as usize]).collect();
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
        Grp::from_perms(seen.into_iter().collect())
    }

    fn from_perms(perms: Vec<Vec<u8>>) -> Grp {
        let mut keyed: Vec<(String, Vec<u8>)> = perms.into_iter().map(|p| (cycle_string(&p), p)).collect();
        keyed.sort();
        let index: HashMap<Vec<u8>, usize> = keyed.iter().enumerate().map(|(i, (_, p))| (p.clone(), i)).collect();
        let k = keyed.len();
        let mut mul = vec![0; k * k];
        let mut inv = vec![0; k];
        for (i, (_, a)) in keyed.iter().enumerate() {
            for (j, (_, b)) in keyed.iter().enumerate() {
                // a then b
                let c: Vec<u8> = a.iter().map(|&x| b[x as usize]).collect();
                mul[i * k + j] = index[&c];
                if mul[i * k + j] == 0 {
                    inv[i] = j;
                }
            }
        }
        let (names, perms) = keyed.into_iter().unzip();
        Grp { perms, names, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn conj_set(&self, set: &Set, g: usize) -> Set {
        set.iter().map(|&x| self.conj(x, g)).collect()
    }

    pub fn product_set(&self, a: &Set, b: &Set) -> Set {
        a.iter().flat_map(|&x| b.iter().map(move |&y| self.mul(x, y))).collect()
    }

    pub fn closure(&self, seed: impl IntoIterator<Item = usize>) -> Set {
        let gens: Vec<usize> = seed.into_iter().collect();
        let mut h = Set::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = self.mul(a, g);
                if h.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        h
    }

    pub fn names(&self, set: &Set) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&x| self.names[x].clone()).collect();
        v.sort();
        v
    }

    pub fn subgroups(&self) -> Vec<Set> {
        let mut all: BTreeSet<Set> = BTreeSet::from([Set::from([0])]);
        let mut queue = VecDeque::from([(Set::from([0]), Vec::new())]);
        while let Some((h, gens)) = queue.pop_front() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut more: Vec<usize> = gens.clone();
                more.push(g);
                let k = self.closure(more.iter().copied());
                if all.insert(k.clone()) {
                    queue.push_back((k, more));
                }
            }
        }
        all.into_iter().collect()
    }

    pub fn normalizer(&self, h: &Set) -> Set {
        (0..self.order()).filter(|&g| self.conj_set(h, g) == *h).collect()
    }

    /// Sylow p-subgroups, least first.
    pub fn sylows(&self, subgroups: &[Set], p: usize) -> Vec<Set> {
        let mut n = self.order();
        let mut pp = 1;
        while n % p == 0 {
            n /= p;
            pp *= p;
        }
        let mut v: Vec<Set> = subgroups.iter().filter(|h| h.len() == pp).cloned().collect();
        v.sort_by_key(|h| self.names(h));
        v
    }
}

fn gl32_group() -> Grp {
    // every invertible 3x3 matrix over F_2, acting on row vectors 1..=7
    let mut perms = Vec::new();
    for code in 0u32..512 {
        let rows = [(code & 7) as u8, ((code >> 3) & 7) as u8, ((code >> 6) & 7) as u8];
        let image = |v: u8| (0..3).filter(|i| v >> i & 1 == 1).fold(0u8, |acc, i| acc ^ rows[i]);
        let imgs: Vec<u8> = (1..=7).map(image).collect();
        let distinct: BTreeSet<u8> = imgs.iter().copied().collect();
        if distinct.len() == 7 && !distinct.contains(&0) {
            perms.push(imgs.into_iter().map(|v| v - 1).collect());
        }
    }
    Grp::from_perms(perms)
}

fn o4plus2_group() -> Grp {
    Grp::generate(&[perm(6, &[&[1, 2, 3]]), perm(6, &[&[1, 2]]), perm(6, &[&[1, 4], &[2, 5], &[3, 6]])])
}

pub struct Loc<'a> {
    pub g: &'a Grp,
    pub s: Set,
    pub delta: BTreeSet<Set>,
    pub carrier: Vec<usize>,
    in_carrier: Vec<bool>,
}

impl<'a> Loc<'a> {
    pub fn new(g: &'a Grp, s: Set, delta: BTreeSet<Set>) -> Loc<'a> {
        let mut l = Loc {
            g,
            s,
            delta,
            carrier: Vec::new(),
            in_carrier: vec![false; g.order()],
        };
        for x in 0..g.order() {
            if l.delta.contains(&l.s_w(&[x])) {
                l.carrier.push(x);
                l.in_carrier[x] = true;
            }
        }
        l
    }

    pub fn contains(&self, x: usize) -> bool {
        self.in_carrier[x]
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// Points of `S` that stay in `S` under every prefix of `w`.
    pub fn s_w(&self, w: &[usize]) -> Set {
        let mut out = Set::new();
        'x: for &x in &self.s {
            let mut y = x;
            for &g in w {
                y = self.g.conj(y, g);
                if !self.s.contains(&y) {
                    continue 'x;
                }
            }
            out.insert(x);
        }
        out
    }

    pub fn defined(&self, w: &[usize]) -> bool {
        w.iter().all(|&x| self.contains(x)) && self.delta.contains(&self.s_w(w))
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.defined(&[a, b]).then(|| self.g.mul(a, b))
    }

    pub fn conj(&self, x: usize, g: usize) -> Option<usize> {
        self.defined(&[self.g.inv(g), x, g]).then(|| self.g.conj(x, g))
    }

    /// Every `S_w`, by a search over (S_w, product) pairs.
    pub fn omega(&self) -> BTreeSet<Set> {
        let mut seen: BTreeSet<(Set, usize)> = BTreeSet::new();
        let start = (self.s.clone(), 0);
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some((sw, p)) = queue.pop_front() {
            for &h in &self.carrier {
                let q = self.g.mul(p, h);
                let next: Set = sw.iter().copied().filter(|&x| self.s.contains(&self.g.conj(x, q))).collect();
                if seen.insert((next.clone(), q)) {
                    queue.push_back((next, q));
                }
            }
        }
        seen.into_iter().map(|(s, _)| s).collect()
    }
}

pub struct Omega {
    pub members: BTreeSet<Set>,
    dims: BTreeMap<Set, usize>,
}

impl Omega {
    pub fn new(members: BTreeSet<Set>) -> Omega {
        let mut by_size: Vec<&Set> = members.iter().collect();
        by_size.sort_by_key(|m| m.len());
        let mut dims = BTreeMap::new();
        for m in by_size {
            let d = members
                .iter()
                .filter(|x| x.len() < m.len() && x.is_subset(m))
                .map(|x| dims[x] + 1)
                .max()
                .unwrap_or(0);
            dims.insert(m.clone(), d);
        }
        Omega { members, dims }
    }

    pub fn star(&self, x: &Set) -> Set {
        let mut out: Option<Set> = None;
        for m in self.members.iter().filter(|m| x.is_subset(m)) {
            out = Some(match out {
                None => m.clone(),
                Some(o) => o.intersection(m).copied().collect(),
            });
        }
        out.expect("S is a member")
    }

    pub fn dim(&self, x: &Set) -> usize {
        self.dims[&self.star(x)]
    }
}

/// Closure under inverses, defined products and defined conjugation.
pub fn normal_closure(l: &Loc, seed: &[usize]) -> Set {
    let mut n: Set = seed.iter().copied().chain([0]).collect();
    loop {
        let mut next = n.clone();
        for &a in &n {
            next.insert(l.g.inv(a));
            for &b in &n {
                if let Some(c) = l.mul(a, b) {
                    next.insert(c);
                }
            }
            for &g in &l.carrier {
                if let Some(c) = l.conj(a, g) {
                    next.insert(c);
                }
            }
        }
        if next.len() == n.len() {
            return n;
        }
        n = next;
    }
}

/// Orbits of the partial conjugation action on `L`.
pub fn classes(l: &Loc) -> Vec<Set> {
    let mut done = vec![false; l.g.order()];
    let mut out = Vec::new();
    for &x in &l.carrier {
        if done[x] {
            continue;
        }
        let mut orbit = Set::from([x]);
        let mut queue = VecDeque::from([x]);
        done[x] = true;
        while let Some(y) = queue.pop_front() {
            for &g in &l.carrier {
                if let Some(z) = l.conj(y, g) {
                    if !done[z] {
                        done[z] = true;
                        orbit.insert(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        out.push(orbit);
    }
    out
}

fn is_partial_subgroup(l: &Loc, n: &Set) -> bool {
    n.iter().all(|&a| {
        n.contains(&l.g.inv(a)) && n.iter().all(|&b| l.mul(a, b).map_or(true, |c| n.contains(&c)))
    })
}

/// Partial normal subgroups: unions of classes through `1` that are
/// partial subgroups.
pub fn partial_normals(l: &Loc) -> Vec<Set> {
    let cls = classes(l);
    let (one, rest): (Vec<Set>, Vec<Set>) = cls.into_iter().partition(|c| c.contains(&0));
    assert!(rest.len() < 24, "too many classes for exhaustive search");
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let mut n = one[0].clone();
        for (i, c) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                n.extend(c);
            }
        }
        if is_partial_subgroup(l, &n) {
            out.push(n);
        }
    }
    out.sort_by_key(|n| (n.len(), l.g.names(n)));
    out
}

/// `f` is maximal when no `(f, S_f) ↑ (g, Q)` raises the dimension.
pub fn up_maximal(l: &Loc, om: &Omega, n: &Set) -> Vec<usize> {
    let in_n = |x: usize| n.contains(&x);
    let sub_of = |a: &Set, w: &[usize]| a.is_subset(&l.s_w(w));
    let mut out = Vec::new();
    for &f in &l.carrier {
        let p = l.s_w(&[f]);
        let dp = om.dim(&p);
        let pf = l.g.conj_set(&p, f);
        let mut maximal = true;
        'search: for &x in n.iter().filter(|&&x| l.contains(x) && sub_of(&p, &[x])) {
            let px = l.g.conj_set(&p, x);
            for &g in &l.carrier {
                let y = l.g.mul(l.g.inv(f), l.g.mul(x, g));
                if !in_n(y) || !sub_of(&pf, &[y]) {
                    continue;
                }
                let sg = l.s_w(&[g]);
                for q in l.delta.iter().filter(|q| px.is_subset(q) && q.is_subset(&sg)) {
                    let qg = l.g.conj_set(q, g);
                    if !l.g.conj_set(&pf, y).is_subset(&qg) {
                        continue;
                    }
                    if l.mul(x, g).is_some() && l.mul(x, g) == l.mul(f, y) && om.dim(q) != dp {
                        maximal = false;
                        break 'search;
                    }
                }
            }
        }
        if maximal {
            out.push(f);
        }
    }
    out
}

pub fn left_coset(l: &Loc, n: &Set, f: usize) -> Set {
    n.iter().filter_map(|&x| l.mul(f, x)).collect()
}

/// Order, `|S ∩ N|`, number of maximal elements and of distinct maximal
/// cosets, for every partial normal subgroup.
pub fn normal_table(l: &Loc, om: &Omega) -> Value {
    let mut rows: Vec<[usize; 4]> = partial_normals(l)
        .iter()
        .map(|n| {
            let t = n.intersection(&l.s).count();
            let ups = up_maximal(l, om, n);
            let blocks: BTreeSet<Set> = ups.iter().map(|&f| left_coset(l, n, f)).collect();
            [n.len(), t, ups.len(), blocks.len()]
        })
        .collect();
    rows.sort();
    json!(rows)
}

fn omega_json(l: &Loc, om: &Omega) -> Value {
    let mut members: Vec<(usize, Vec<String>)> = om.members.iter().map(|m| (om.dim(m), l.g.names(m))).collect();
    members.sort();
    json!({
        "members": members,
        "dimension": om.dim(&l.s),
    })
}

/// Largest subgroup of `S` invariant under defined conjugation.
fn o_p(l: &Loc, subs: &[Set]) -> Set {
    subs.iter()
        .filter(|t| t.iter().all(|&x| l.carrier.iter().all(|&g| l.conj(x, g).map_or(true, |y| t.contains(&y)))))
        .max_by_key(|t| t.len())
        .cloned()
        .expect("the trivial subgroup qualifies")
}

fn normalizer_example(g: &Grp, p: usize) -> usize {
    let subs = g.subgroups();
    let s = g.sylows(&subs, p).remove(0);
    Loc::new(g, s.clone(), BTreeSet::from([s])).size()
}

pub fn derived_values() -> Value {
    let mut out = BTreeMap::new();

    // groups with Δ = {S}
    let s3 = Grp::generate(&[perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])]);
    let d8 = Grp::generate(&[perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 3]])]);
    let s4 = Grp::generate(&[perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])]);
    let gl = gl32_group();
    out.insert(
        "normalizer-carriers",
        json!({
            "s3-p3": normalizer_example(&s3, 3),
            "s3-p2": normalizer_example(&s3, 2),
            "d8-p2": normalizer_example(&d8, 2),
            "s4-p3": normalizer_example(&s4, 3),
            "gl32-p2": normalizer_example(&gl, 2),
        }),
    );

    // GL3(2)
    let subs = gl.subgroups();
    let sylows = gl.sylows(&subs, 2);
    let s = sylows[0].clone();
    let ns = gl.normalizer(&s);
    let mut ms: Vec<Set> = subs
        .iter()
        .filter(|h| s.is_subset(h) && h.len() < gl.order())
        .filter(|h| !subs.iter().any(|k| k.len() > h.len() && k.len() < gl.order() && h.is_subset(k)))
        .cloned()
        .collect();
    ms.sort_by_key(|m| gl.names(m));
    let o2 = |m: &Set| -> Set {
        m.iter().fold(s.clone(), |acc, &x| acc.intersection(&gl.conj_set(&s, x)).copied().collect())
    };
    let ps: Vec<Set> = ms.iter().map(o2).collect();
    let off = ms[1].iter().copied().find(|x| !ms[0].contains(x)).unwrap();
    let p1g = gl.conj_set(&ps[0], off);
    let elementary = p1g.len() == 4
        && p1g.iter().all(|&a| gl.mul(a, a) == 0)
        && p1g.iter().all(|&a| p1g.iter().all(|&b| gl.mul(a, b) == gl.mul(b, a)));
    out.insert(
        "gl32",
        json!({
            "order": gl.order(),
            "subgroups": subs.len(),
            "sylow-count": sylows.len(),
            "s": gl.names(&s),
            "normalizer-s": ns.len(),
            "m": [gl.names(&ms[0]), gl.names(&ms[1])],
            "p": [gl.names(&ps[0]), gl.names(&ps[1])],
            "p1-conjugate": {
                "by": gl.names[off],
                "members": gl.names(&p1g),
                "elementary-abelian": elementary,
                "distinct": p1g != ps[0],
                "inside-s": p1g.is_subset(&s),
            },
        }),
    );

    let s_subs: Vec<Set> = subs.iter().filter(|h| h.is_subset(&s)).cloned().collect();
    let small_delta = BTreeSet::from([s.clone(), ps[0].clone(), ps[1].clone()]);
    let small = Loc::new(&gl, s.clone(), small_delta.clone());
    let small_om = Omega::new(small.omega());
    let m_union: Set = ms[0].union(&ms[1]).copied().collect();
    let z: Set = s.iter().copied().filter(|&x| s.iter().all(|&y| gl.mul(x, y) == gl.mul(y, x))).collect();
    let zinv = *z.iter().find(|&&x| x != 0).unwrap();
    let s_g: BTreeMap<String, usize> = small.carrier.iter().map(|&g| (gl.names[g].clone(), small.s_w(&[g]).len())).collect();
    let p1 = &ps[0];
    let hom_p1: BTreeSet<Vec<usize>> = small
        .carrier
        .iter()
        .filter(|&&g| p1.is_subset(&small.s_w(&[g])) && gl.conj_set(p1, g) == *p1)
        .map(|&g| p1.iter().map(|&x| gl.conj(x, g)).collect())
        .collect();
    let expanded = s_subs.iter().filter(|p| small.delta.contains(&small_om.star(p))).count();
    out.insert(
        "gl32-small",
        json!({
            "carrier": gl.names(&small.carrier.iter().copied().collect()),
            "m1-union-m2": gl.names(&m_union),
            "s-g-orders": s_g,
            "omega": omega_json(&small, &small_om),
            "one-star": gl.names(&small_om.star(&Set::from([0]))),
            "o-p": gl.names(&o_p(&small, &s_subs)),
            "hom-p1-p1": hom_p1.len(),
            "p1-fully-normalized": fully_normalized(&small, &small_om, p1),
            "expanded-objects": expanded,
            "normal-closure-central-involution": normal_closure(&small, &[zinv]).len(),
            "normals": normal_table(&small, &small_om),
        }),
    );

    let full_delta: BTreeSet<Set> = s_subs.iter().filter(|h| h.len() > 1).cloned().collect();
    let full = Loc::new(&gl, s.clone(), full_delta);
    let full_om = Omega::new(full.omega());
    let m12 = gl.product_set(&ms[0], &ms[1]);
    let m21 = gl.product_set(&ms[1], &ms[0]);
    let restricted = Loc::new(&gl, s.clone(), small_delta);
    out.insert(
        "gl32-full",
        json!({
            "carrier": gl.names(&full.carrier.iter().copied().collect()),
            "m1m2-union-m2m1": gl.names(&m12.union(&m21).copied().collect()),
            "restriction-is-small": restricted.carrier == small.carrier,
            "omega": omega_json(&full, &full_om),
            "normals": normal_table(&full, &full_om),
        }),
    );

    // (C3 x C3) ⋊ D8
    let w = o4plus2_group();
    let wsubs = w.subgroups();
    let ws = w.sylows(&wsubs, 2).remove(0);
    let ws_subs: Vec<Set> = wsubs.iter().filter(|h| h.is_subset(&ws)).cloned().collect();
    let wl = Loc::new(&w, ws.clone(), ws_subs.iter().filter(|h| h.len() > 1).cloned().collect());
    let wom = Omega::new(wl.omega());
    let pair = first_word(&wl, 2, |l, v| !l.defined(v));
    let triple = first_word(&wl, 3, |l, v| {
        l.defined(&v[..2]) && l.defined(&[l.g.mul(v[0], v[1]), v[2]]) && !l.defined(v)
    });
    let wz: Set = ws.iter().copied().filter(|&x| ws.iter().all(|&y| w.mul(x, y) == w.mul(y, x))).collect();
    let nz = wl
        .carrier
        .iter()
        .filter(|&&g| wz.is_subset(&wl.s_w(&[g])) && w.conj_set(&wz, g) == wz)
        .count();
    let normals = partial_normals(&wl);
    let mut products: Vec<[usize; 3]> = Vec::new();
    let wlr = &wl;
    for m in &normals {
        for n in &normals {
            let mn: Set = m.iter().flat_map(|&a| n.iter().filter_map(move |&b| wlr.mul(a, b))).collect();
            products.push([m.len(), n.len(), mn.len()]);
        }
    }
    products.sort();
    products.dedup();
    out.insert(
        "o4plus2",
        json!({
            "order": w.order(),
            "s": w.names(&ws),
            "carrier": wl.size(),
            "nondomain-pair": pair.iter().map(|&x| w.names[x].clone()).collect::<Vec<_>>(),
            "warning-triple": triple.iter().map(|&x| w.names[x].clone()).collect::<Vec<_>>(),
            "normalizer-of-center": nz,
            "omega": omega_json(&wl, &wom),
            "one-star": w.names(&wom.star(&Set::from([0]))),
            "o-p": w.names(&o_p(&wl, &ws_subs)),
            "normal-closure-s": normal_closure(&wl, &ws.iter().copied().collect::<Vec<_>>()).len(),
            "normals": normal_table(&wl, &wom),
            "products": products,
        }),
    );

    // small catalog entries
    let d12 = Grp::generate(&[perm(6, &[&[1, 2, 3, 4, 5, 6]]), perm(6, &[&[2, 6], &[3, 5]])]);
    let dsubs = d12.subgroups();
    let ds = d12.sylows(&dsubs, 2).remove(0);
    let dl = Loc::new(&d12, ds.clone(), dsubs.iter().filter(|h| h.len() > 1 && h.is_subset(&ds)).cloned().collect());
    let dom = Omega::new(dl.omega());
    out.insert(
        "dihedral-demo",
        json!({ "s": d12.names(&ds), "carrier": dl.size(), "omega": omega_json(&dl, &dom), "normals": normal_table(&dl, &dom) }),
    );
    let s4subs = s4.subgroups();
    let s4s = s4.sylows(&s4subs, 3).remove(0);
    let sl = Loc::new(&s4, s4s.clone(), BTreeSet::from([s4s.clone()]));
    let som = Omega::new(sl.omega());
    out.insert(
        "delta-s",
        json!({ "s": s4.names(&s4s), "carrier": sl.size(), "omega": omega_json(&sl, &som), "normals": normal_table(&sl, &som) }),
    );

    json!(out)
}

/// Least word of the given length (by letters) satisfying `pred`.
fn first_word(l: &Loc, len: usize, pred: impl Fn(&Loc, &[usize]) -> bool) -> Vec<usize> {
    let mut v = vec![0; len];
    fn rec(l: &Loc, v: &mut Vec<usize>, i: usize, pred: &dyn Fn(&Loc, &[usize]) -> bool) -> bool {
        if i == v.len() {
            return pred(l, v);
        }
        for k in 0..l.carrier.len() {
            v[i] = l.carrier[k];
            if rec(l, v, i + 1, pred) {
                return true;
            }
        }
        false
    }
    assert!(rec(l, &mut v, 0, &pred), "no witness of length {len}");
    v
}

/// `dim N_S(X)` is largest among the conjugates of `X` reachable by
/// defined conjugation.
fn fully_normalized(l: &Loc, om: &Omega, x: &Set) -> bool {
    let n_s = |y: &Set| -> Set { l.s.iter().copied().filter(|&a| l.g.conj_set(y, a) == *y).collect() };
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for &g in &l.carrier {
            if y.is_subset(&l.s_w(&[g])) {
                let z = l.g.conj_set(&y, g);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
    }
    let dx = om.dim(&n_s(x));
    seen.iter().all(|y| om.dim(&n_s(y)) <= dx)
}
