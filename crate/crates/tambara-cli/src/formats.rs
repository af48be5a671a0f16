//! JSON schemas for groups, G-sets, rings, Tambara tables, ideals, bispans,
//! and certificates. Every file carries a `schema` field; readers refuse
//! unknown majors. All maps are ordered, so output is byte-stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use tambara::bispans::{Bispan, FiberOrbitKey, PieceKey};
use tambara::classify::SplittingCertificate;
use tambara::functor::{tabulate, TambaraData, TambaraFunctor, TambaraHom, Tabulated};
use tambara::groups::{mask_elements, FiniteGroup, Mask, SubgroupLattice};
use tambara::gsets::{GMap, GSet};
use tambara::ideals::NakaokaIdeal;
use tambara::rings::{Elt, GaloisField, Ring, TableRing};

use crate::{CliError, CliResult, SCHEMA_VERSION};

pub fn check_schema(schema: u64) -> CliResult<()> {
    if schema != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "unsupported schema major {schema}, this build reads {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

// ----------------------------------------------------------------------
// Elements.
// ----------------------------------------------------------------------

/// Canonical element serialization: integers, polynomial coefficient
/// vectors, component tuples, Burnside coefficient vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EltJson {
    I { i: i64 },
    P { p: Vec<u64> },
    T { t: Vec<EltJson> },
    V { v: Vec<i64> },
}

pub fn elt_to_json(e: &Elt) -> EltJson {
    match e {
        Elt::Int(i) => EltJson::I { i: *i },
        Elt::Poly(p) => EltJson::P { p: p.clone() },
        Elt::Tuple(t) => EltJson::T {
            t: t.iter().map(elt_to_json).collect(),
        },
        Elt::IntVec(v) => EltJson::V { v: v.clone() },
    }
}

pub fn elt_from_json(e: &EltJson) -> Elt {
    match e {
        EltJson::I { i } => Elt::Int(*i),
        EltJson::P { p } => Elt::Poly(p.clone()),
        EltJson::T { t } => Elt::Tuple(t.iter().map(elt_from_json).collect()),
        EltJson::V { v } => Elt::IntVec(v.clone()),
    }
}

// ----------------------------------------------------------------------
// Groups.
// ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// Multiplication table by labels: row a, column b ↦ a·b.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Permutation generators in cycle form over 0..degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm_generators: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

pub fn group_from_json(g: &GroupJson) -> CliResult<Arc<FiniteGroup>> {
    if let Some(gens) = &g.perm_generators {
        let degree = g
            .degree
            .ok_or_else(|| CliError::Input("perm_generators needs degree".into()))?;
        let perms: Vec<Vec<usize>> = gens
            .iter()
            .map(|cycles| {
                let mut p: Vec<usize> = (0..degree).collect();
                for cycle in cycles {
                    for w in 0..cycle.len() {
                        let from = cycle[w];
                        let to = cycle[(w + 1) % cycle.len()];
                        if from >= degree || to >= degree {
                            return Err(CliError::Input("cycle entry out of range".into()));
                        }
                        p[from] = to;
                    }
                }
                Ok(p)
            })
            .collect::<CliResult<_>>()?;
        return Ok(Arc::new(FiniteGroup::from_permutations(degree, &perms)?));
    }
    let elements = g
        .elements
        .clone()
        .ok_or_else(|| CliError::Input("group needs elements or perm_generators".into()))?;
    let mul = g
        .mul
        .as_ref()
        .ok_or_else(|| CliError::Input("group needs a mul table".into()))?;
    let id = g
        .id
        .as_ref()
        .ok_or_else(|| CliError::Input("group needs an id label".into()))?;
    let pos = |label: &str| -> CliResult<usize> {
        elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| CliError::Input(format!("unknown element label {label}")))
    };
    let table: Vec<Vec<usize>> = mul
        .iter()
        .map(|row| row.iter().map(|l| pos(l)).collect())
        .collect::<CliResult<_>>()?;
    let idp = pos(id)?;
    Ok(Arc::new(FiniteGroup::from_table(elements, table, idp)?))
}

pub fn group_to_json(g: &FiniteGroup) -> GroupJson {
    let labels = g.labels().to_vec();
    let mul = (0..g.order())
        .map(|a| {
            (0..g.order())
                .map(|b| labels[g.mul(a, b)].clone())
                .collect()
        })
        .collect();
    GroupJson {
        elements: Some(labels.clone()),
        mul: Some(mul),
        id: Some(labels[g.id()].clone()),
        perm_generators: None,
        degree: None,
    }
}

/// "{a,b,c}" for the sorted element labels of a subgroup mask.
pub fn mask_name(g: &FiniteGroup, mask: Mask) -> String {
    let names: Vec<&str> = mask_elements(mask).map(|i| g.label(i)).collect();
    format!("{{{}}}", names.join(","))
}

pub fn mask_from_name(g: &FiniteGroup, name: &str) -> CliResult<Mask> {
    let inner = name
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| CliError::Input(format!("subgroup name {name} not in braces")))?;
    let mut mask = 0u32;
    if inner.is_empty() {
        return Err(CliError::Input("empty subgroup".into()));
    }
    for label in inner.split(',') {
        let idx = g
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CliError::Input(format!("unknown element label {label}")))?;
        mask |= 1 << idx;
    }
    Ok(mask)
}

// ----------------------------------------------------------------------
// G-sets and maps.
// ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSetJson {
    pub points: Vec<String>,
    /// For every group element label, the image points in point order.
    pub act: BTreeMap<String, Vec<String>>,
}

pub fn gset_from_json(group: &Arc<FiniteGroup>, j: &GSetJson) -> CliResult<GSet> {
    let n = j.points.len();
    let pos = |label: &str| -> CliResult<usize> {
        j.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| CliError::Input(format!("unknown point {label}")))
    };
    let mut act = vec![0usize; group.order() * n];
    for g in group.elements() {
        let glabel = group.label(g);
        let row = j
            .act
            .get(glabel)
            .ok_or_else(|| CliError::Input(format!("action missing element {glabel}")))?;
        if row.len() != n {
            return Err(CliError::Input("action row has wrong length".into()));
        }
        for (x, img) in row.iter().enumerate() {
            act[g * n + x] = pos(img)?;
        }
    }
    Ok(GSet::new(group.clone(), n, act)?)
}

pub fn gset_to_json(x: &GSet) -> GSetJson {
    let g = x.group();
    let points: Vec<String> = (0..x.len()).map(|p| format!("p{p}")).collect();
    let act = g
        .elements()
        .map(|a| {
            (
                g.label(a).to_string(),
                (0..x.len()).map(|p| format!("p{}", x.act(a, p))).collect(),
            )
        })
        .collect();
    GSetJson { points, act }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GMapJson {
    pub f: BTreeMap<String, String>,
}

pub fn gmap_from_json(src: &GSet, dst: &GSet, j: &GMapJson, src_points: &[String], dst_points: &[String]) -> CliResult<GMap> {
    let mut f = vec![0usize; src.len()];
    for (x, label) in src_points.iter().enumerate() {
        let img = j
            .f
            .get(label)
            .ok_or_else(|| CliError::Input(format!("map missing point {label}")))?;
        f[x] = dst_points
            .iter()
            .position(|p| p == img)
            .ok_or_else(|| CliError::Input(format!("unknown target point {img}")))?;
    }
    Ok(GMap::new(src.clone(), dst.clone(), f)?)
}

// ----------------------------------------------------------------------
// Rings.
// ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingJson {
    Modular {
        n: u64,
    },
    Galois {
        p: u64,
        k: usize,
    },
    Function {
        size: usize,
        base: Box<RingJson>,
    },
    Product {
        factors: Vec<RingJson>,
    },
    Table {
        n: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

pub fn ring_from_json(j: &RingJson) -> CliResult<Ring> {
    Ok(match j {
        RingJson::Modular { n } => {
            if *n == 0 {
                return Err(CliError::Input("modulus must be positive".into()));
            }
            Ring::Modular(*n)
        }
        RingJson::Galois { p, k } => Ring::Galois(GaloisField::new(*p, *k)?),
        RingJson::Function { size, base } => Ring::Function {
            size: *size,
            base: Box::new(ring_from_json(base)?),
        },
        RingJson::Product { factors } => Ring::Product(
            factors
                .iter()
                .map(ring_from_json)
                .collect::<CliResult<_>>()?,
        ),
        RingJson::Table {
            n,
            add,
            mul,
            neg,
            zero,
            one,
        } => {
            let flat = |m: &Vec<Vec<usize>>| -> Vec<usize> {
                m.iter().flat_map(|r| r.iter().copied()).collect()
            };
            let t = TableRing {
                n: *n,
                add: flat(add),
                mul: flat(mul),
                neg: neg.clone(),
                zero: *zero,
                one: *one,
            };
            t.validate()?;
            Ring::Table(Arc::new(t))
        }
    })
}

/// Serialize a ring; kinds without a direct JSON form (subrings, quotients,
/// relabelings, Burnside) are exported as explicit tables.
pub fn ring_to_json(r: &Ring) -> CliResult<RingJson> {
    Ok(match r {
        Ring::Modular(n) => RingJson::Modular { n: *n },
        Ring::Galois(f) => RingJson::Galois { p: f.p, k: f.k },
        Ring::Function { size, base } => RingJson::Function {
            size: *size,
            base: Box::new(ring_to_json(base)?),
        },
        Ring::Product(fs) => RingJson::Product {
            factors: fs.iter().map(ring_to_json).collect::<CliResult<_>>()?,
        },
        Ring::Table(t) => {
            let rows = |m: &Vec<usize>| -> Vec<Vec<usize>> {
                (0..t.n).map(|i| m[i * t.n..(i + 1) * t.n].to_vec()).collect()
            };
            RingJson::Table {
                n: t.n,
                add: rows(&t.add),
                mul: rows(&t.mul),
                neg: t.neg.clone(),
                zero: t.zero,
                one: t.one,
            }
        }
        other => {
            let elems = other.enumerate()?;
            let n = elems.len();
            let idx = |e: &Elt| elems.iter().position(|x| x == e).unwrap();
            let add = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| idx(&other.add(&elems[i], &elems[j])))
                        .collect()
                })
                .collect();
            let mul = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| idx(&other.mul(&elems[i], &elems[j])))
                        .collect()
                })
                .collect();
            let neg = (0..n).map(|i| idx(&other.neg(&elems[i]))).collect();
            RingJson::Table {
                n,
                add,
                mul,
                neg,
                zero: idx(&other.zero()),
                one: idx(&other.one()),
            }
        }
    })
}

// ----------------------------------------------------------------------
// Tambara tables.
// ----------------------------------------------------------------------

pub type EltMapJson = Vec<(EltJson, EltJson)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TambaraJson {
    pub schema: u64,
    /// "tabulated" or "burnside".
    pub kind: String,
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub levels: BTreeMap<String, RingJson>,
    /// Keys "H<K": subgroup name H, class name K with H ⊆ rep(K).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub res: BTreeMap<String, EltMapJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tr: BTreeMap<String, EltMapJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nm: BTreeMap<String, EltMapJson>,
    /// Keys "K|g": class name K, group element label g in N(rep K).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conj: BTreeMap<String, EltMapJson>,
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub desc: Option<String>,
}

pub fn tambara_to_json(t: &TambaraFunctor) -> CliResult<TambaraJson> {
    let group = t.group();
    let lat = t.lattice();
    let mut flags = BTreeMap::new();
    if let TambaraData::Burnside(bd) = t.data() {
        flags.insert("enumerable".into(), false);
        flags.insert("virtual_norms".into(), bd.virtual_norms);
        return Ok(TambaraJson {
            schema: SCHEMA_VERSION,
            kind: "burnside".into(),
            group: group_to_json(group),
            levels: BTreeMap::new(),
            res: BTreeMap::new(),
            tr: BTreeMap::new(),
            nm: BTreeMap::new(),
            conj: BTreeMap::new(),
            flags,
            desc: Some(t.describe().to_string()),
        });
    }
    if !t.is_enumerable() {
        return Err(CliError::Input(
            "only enumerable or Burnside functors have a table form".into(),
        ));
    }
    flags.insert("enumerable".into(), true);
    flags.insert("mrc".into(), t.is_mrc()?);
    let tab = tabulate(t)?;
    // Levels without a native JSON form are exported as tables, and their
    // elements are re-encoded as table indices everywhere in the file.
    let native = |r: &Ring| {
        matches!(
            r,
            Ring::Modular(_)
                | Ring::Galois(_)
                | Ring::Function { .. }
                | Ring::Product(_)
                | Ring::Table(_)
        )
    };
    let encode = |c: usize, e: &Elt| -> CliResult<EltJson> {
        let ring = t.level(c);
        Ok(if native(ring) {
            elt_to_json(e)
        } else {
            EltJson::I {
                i: ring.index_of(e)? as i64,
            }
        })
    };
    let mut levels = BTreeMap::new();
    for c in 0..t.num_classes() {
        levels.insert(lat.class_name(c), ring_to_json(t.level(c))?);
    }
    let pair_key = |s: Mask, k: usize| format!("{}<{}", mask_name(group, s), lat.class_name(k));
    let map_json = |src_cls: usize, dst_cls: usize, table: &Vec<Elt>| -> CliResult<EltMapJson> {
        table
            .iter()
            .enumerate()
            .map(|(i, img)| {
                Ok((
                    encode(src_cls, &t.level(src_cls).elt_at(i as u64))?,
                    encode(dst_cls, img)?,
                ))
            })
            .collect()
    };
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    let mut nm = BTreeMap::new();
    for ((s, k), table) in &tab.res {
        let cls_s = lat.class_of_mask(*s)?;
        res.insert(pair_key(*s, *k), map_json(*k, cls_s, table)?);
    }
    for ((s, k), table) in &tab.tr {
        let cls_s = lat.class_of_mask(*s)?;
        tr.insert(pair_key(*s, *k), map_json(cls_s, *k, table)?);
    }
    for ((s, k), table) in &tab.nm {
        let cls_s = lat.class_of_mask(*s)?;
        nm.insert(pair_key(*s, *k), map_json(cls_s, *k, table)?);
    }
    let mut conj = BTreeMap::new();
    for ((c, n), table) in &tab.weyl {
        let key = format!("{}|{}", lat.class_name(*c), group.label(*n));
        conj.insert(key, map_json(*c, *c, table)?);
    }
    Ok(TambaraJson {
        schema: SCHEMA_VERSION,
        kind: "tabulated".into(),
        group: group_to_json(group),
        levels,
        res,
        tr,
        nm,
        conj,
        flags,
        desc: Some(t.describe().to_string()),
    })
}

pub fn tambara_from_json(j: &TambaraJson) -> CliResult<TambaraFunctor> {
    check_schema(j.schema)?;
    let group = group_from_json(&j.group)?;
    if j.kind == "burnside" {
        return Ok(tambara::constructions::burnside_tambara(group)?);
    }
    if j.kind != "tabulated" {
        return Err(CliError::Input(format!("unknown functor kind {}", j.kind)));
    }
    let lat = Arc::new(SubgroupLattice::new(group.clone()));
    let mut levels = Vec::with_capacity(lat.num_classes());
    for c in 0..lat.num_classes() {
        let name = lat.class_name(c);
        let rj = j
            .levels
            .get(&name)
            .ok_or_else(|| CliError::Input(format!("missing level {name}")))?;
        levels.push(ring_from_json(rj)?);
    }
    let parse_pair = |key: &str| -> CliResult<(Mask, usize)> {
        let (sname, kname) = key
            .split_once('<')
            .ok_or_else(|| CliError::Input(format!("bad pair key {key}")))?;
        let s = mask_from_name(&group, sname)?;
        let k = (0..lat.num_classes())
            .find(|&c| lat.class_name(c) == kname)
            .ok_or_else(|| CliError::Input(format!("unknown class {kname}")))?;
        Ok((s, k))
    };
    let parse_map = |ring: &Ring, m: &EltMapJson| -> CliResult<Vec<Elt>> {
        let n = ring.size().unwrap() as usize;
        let mut out = vec![None; n];
        for (src, dst) in m {
            let s = elt_from_json(src);
            let idx = ring.index_of(&s)? as usize;
            out[idx] = Some(elt_from_json(dst));
        }
        out.into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| CliError::Input(format!("map missing element {i}"))))
            .collect()
    };
    let mut tab = Tabulated::default();
    for (key, m) in &j.res {
        let (s, k) = parse_pair(key)?;
        tab.res.insert((s, k), parse_map(&levels[k], m)?);
    }
    for (key, m) in &j.tr {
        let (s, k) = parse_pair(key)?;
        let cls_s = lat.class_of_mask(s)?;
        tab.tr.insert((s, k), parse_map(&levels[cls_s], m)?);
    }
    for (key, m) in &j.nm {
        let (s, k) = parse_pair(key)?;
        let cls_s = lat.class_of_mask(s)?;
        tab.nm.insert((s, k), parse_map(&levels[cls_s], m)?);
    }
    for (key, m) in &j.conj {
        let (cname, glabel) = key
            .split_once('|')
            .ok_or_else(|| CliError::Input(format!("bad conj key {key}")))?;
        let c = (0..lat.num_classes())
            .find(|&c| lat.class_name(c) == cname)
            .ok_or_else(|| CliError::Input(format!("unknown class {cname}")))?;
        let n = group
            .labels()
            .iter()
            .position(|l| l == glabel)
            .ok_or_else(|| CliError::Input(format!("unknown element {glabel}")))?;
        tab.weyl.insert((c, n), parse_map(&levels[c], m)?);
    }
    // Completeness of the tables.
    for k in 0..lat.num_classes() {
        let rep = lat.rep(k);
        for &s in lat.subgroups() {
            if s & rep != s {
                continue;
            }
            for (name, present) in [
                ("res", tab.res.contains_key(&(s, k))),
                ("tr", tab.tr.contains_key(&(s, k))),
                ("nm", tab.nm.contains_key(&(s, k))),
            ] {
                if !present {
                    return Err(CliError::Input(format!(
                        "missing {name} table for {}<{}",
                        mask_name(&group, s),
                        lat.class_name(k)
                    )));
                }
            }
        }
        for n in mask_elements(lat.classes()[k].normalizer) {
            if !tab.weyl.contains_key(&(k, n)) {
                return Err(CliError::Input(format!(
                    "missing conj table {}|{}",
                    lat.class_name(k),
                    group.label(n)
                )));
            }
        }
    }
    let desc = j.desc.clone().unwrap_or_else(|| "imported".into());
    Ok(TambaraFunctor::new(
        group,
        lat,
        levels,
        TambaraData::Tabulated(Box::new(tab)),
        desc,
    )?)
}

// ----------------------------------------------------------------------
// Ideals.
// ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub schema: u64,
    pub levels: BTreeMap<String, Vec<EltJson>>,
}

pub fn ideal_to_json(t: &TambaraFunctor, i: &NakaokaIdeal) -> IdealJson {
    let lat = t.lattice();
    IdealJson {
        schema: SCHEMA_VERSION,
        levels: i
            .levels
            .iter()
            .enumerate()
            .map(|(c, set)| {
                (
                    lat.class_name(c),
                    set.iter().map(elt_to_json).collect(),
                )
            })
            .collect(),
    }
}

pub fn ideal_from_json(t: &TambaraFunctor, j: &IdealJson) -> CliResult<NakaokaIdeal> {
    check_schema(j.schema)?;
    let lat = t.lattice();
    let mut levels = Vec::with_capacity(t.num_classes());
    for c in 0..t.num_classes() {
        let name = lat.class_name(c);
        let set = j
            .levels
            .get(&name)
            .ok_or_else(|| CliError::Input(format!("ideal missing level {name}")))?;
        levels.push(set.iter().map(elt_from_json).collect());
    }
    Ok(NakaokaIdeal { levels })
}

// ----------------------------------------------------------------------
// Bispans (canonical-form surface).
// ----------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberKeyJson {
    pub stab: Vec<String>,
    pub x: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceJson {
    pub stab: Vec<String>,
    pub y: String,
    pub fiber: Vec<FiberKeyJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BispanJson {
    pub x: GSetJson,
    pub y: GSetJson,
    pub pieces: Vec<PieceJson>,
}

pub fn bispan_to_json(b: &Bispan) -> BispanJson {
    let group = b.src().group();
    let point_name = |i: usize| format!("p{i}");
    let keys = b.keys();
    BispanJson {
        x: gset_to_json(b.src()),
        y: gset_to_json(b.dst()),
        pieces: keys
            .iter()
            .map(|k| PieceJson {
                stab: k.stab.iter().map(|&e| group.label(e).to_string()).collect(),
                y: point_name(k.y),
                fiber: k
                    .fiber
                    .iter()
                    .map(|f| FiberKeyJson {
                        stab: f.stab.iter().map(|&e| group.label(e).to_string()).collect(),
                        x: point_name(f.x),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn bispan_from_json(
    group: &Arc<FiniteGroup>,
    j: &BispanJson,
    x: &GSet,
    y: &GSet,
) -> CliResult<Bispan> {
    let elt_pos = |label: &str| -> CliResult<usize> {
        group
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CliError::Input(format!("unknown element {label}")))
    };
    let point_pos = |points: &[String], label: &str| -> CliResult<usize> {
        points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| CliError::Input(format!("unknown point {label}")))
    };
    let keys: Vec<PieceKey> = j
        .pieces
        .iter()
        .map(|p| {
            Ok(PieceKey {
                stab: p
                    .stab
                    .iter()
                    .map(|l| elt_pos(l))
                    .collect::<CliResult<_>>()?,
                y: point_pos(&j.y.points, &p.y)?,
                fiber: p
                    .fiber
                    .iter()
                    .map(|f| {
                        Ok(FiberOrbitKey {
                            stab: f
                                .stab
                                .iter()
                                .map(|l| elt_pos(l))
                                .collect::<CliResult<_>>()?,
                            x: point_pos(&j.x.points, &f.x)?,
                        })
                    })
                    .collect::<CliResult<_>>()?,
            })
        })
        .collect::<CliResult<_>>()?;
    Ok(Bispan::from_keys(x, y, &keys)?)
}

// ----------------------------------------------------------------------
// Hom and certificate surfaces.
// ----------------------------------------------------------------------

pub fn hom_to_json(t: &TambaraFunctor, hom: &TambaraHom) -> serde_json::Value {
    let lat = t.lattice();
    let levels: BTreeMap<String, EltMapJson> = hom
        .levels
        .iter()
        .enumerate()
        .map(|(c, map)| {
            (
                lat.class_name(c),
                map.iter()
                    .map(|(k, v)| (elt_to_json(k), elt_to_json(v)))
                    .collect(),
            )
        })
        .collect();
    serde_json::json!({ "levels": levels })
}

pub fn certificate_to_json(
    t: &TambaraFunctor,
    cert: &SplittingCertificate,
) -> CliResult<serde_json::Value> {
    let group = t.group();
    let orbit: BTreeMap<String, EltJson> = group
        .elements()
        .map(|g| (group.label(g).to_string(), elt_to_json(&cert.orbit[g])))
        .collect();
    Ok(serde_json::json!({
        "idempotent_orbit": orbit,
        "base_ring": ring_to_json(&cert.base_ring)?,
        "corner_elements": cert.corner_elements.iter().map(elt_to_json).collect::<Vec<_>>(),
        "iso": hom_to_json(t, &cert.iso),
        "validation": cert.validation,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tambara::gsets::GMap;

    #[test]
    fn bispan_json_roundtrip() {
        let group = Arc::new(FiniteGroup::cyclic(2));
        let free = GSet::orbit(group.clone(), group.id_mask()).unwrap();
        let pt = GSet::point(group.clone());
        let pi = GMap::terminal(&free, &pt).unwrap();
        let b = Bispan::transfer(&pi);
        let j = bispan_to_json(&b);
        let x = gset_from_json(&group, &j.x).unwrap();
        let y = gset_from_json(&group, &j.y).unwrap();
        let back = bispan_from_json(&group, &j, &x, &y).unwrap();
        assert_eq!(b, back);
    }

    #[test]
    fn tambara_json_reexport_is_stable() {
        let group = Arc::new(FiniteGroup::cyclic(2));
        let t = tambara::constructions::coinduce(group, Ring::gf(2, 1).unwrap()).unwrap();
        let j1 = tambara_to_json(&t).unwrap();
        let imported = tambara_from_json(&j1).unwrap();
        let j2 = tambara_to_json(&imported).unwrap();
        assert_eq!(
            serde_json::to_string(&j1.levels).unwrap(),
            serde_json::to_string(&j2.levels).unwrap()
        );
        assert_eq!(
            serde_json::to_string(&j1.res).unwrap(),
            serde_json::to_string(&j2.res).unwrap()
        );
        assert_eq!(
            serde_json::to_string(&j1.nm).unwrap(),
            serde_json::to_string(&j2.nm).unwrap()
        );
    }
}
