//! Formal polynomial expressions over a Tambara base: evaluation by the
//! universal property, bounded level-generator enumeration, and the
//! integrality witness nm(x − a).
//!
//! The free algebra is never materialized levelwise (it is infinite);
//! expressions plus evaluation carry its universal property. Levels inside
//! expressions are actual subgroup masks, so conjugation-twisted operations
//! route through the same arrow machinery as everything else.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functor::{transversal_in, TambaraFunctor};
use crate::groups::{mask_len, Mask, SubgroupLattice};
use crate::rings::Elt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormalExpr {
    /// Named generator, by index into the presentation.
    Gen(usize),
    /// n·1 at the given level.
    IntConst(Mask, i64),
    /// An explicit element of the level at the given subgroup (in stored
    /// coordinates of its class representative).
    Const(Mask, Elt),
    Add(Box<FormalExpr>, Box<FormalExpr>),
    Mul(Box<FormalExpr>, Box<FormalExpr>),
    Neg(Box<FormalExpr>),
    /// Restriction from `sup` to `sub` (sub ⊆ sup).
    Res {
        sub: Mask,
        sup: Mask,
        arg: Box<FormalExpr>,
    },
    /// Transfer from `sub` up to `sup`.
    Tr {
        sub: Mask,
        sup: Mask,
        arg: Box<FormalExpr>,
    },
    /// Norm from `sub` up to `sup`.
    Nm {
        sub: Mask,
        sup: Mask,
        arg: Box<FormalExpr>,
    },
    /// Conjugation by a group element.
    Conj { g: usize, arg: Box<FormalExpr> },
}

impl FormalExpr {
    pub fn gen(i: usize) -> FormalExpr {
        FormalExpr::Gen(i)
    }

    pub fn add(a: FormalExpr, b: FormalExpr) -> FormalExpr {
        FormalExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: FormalExpr, b: FormalExpr) -> FormalExpr {
        FormalExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: FormalExpr) -> FormalExpr {
        FormalExpr::Neg(Box::new(a))
    }

    pub fn res(sub: Mask, sup: Mask, arg: FormalExpr) -> FormalExpr {
        FormalExpr::Res {
            sub,
            sup,
            arg: Box::new(arg),
        }
    }

    pub fn tr(sub: Mask, sup: Mask, arg: FormalExpr) -> FormalExpr {
        FormalExpr::Tr {
            sub,
            sup,
            arg: Box::new(arg),
        }
    }

    pub fn nm(sub: Mask, sup: Mask, arg: FormalExpr) -> FormalExpr {
        FormalExpr::Nm {
            sub,
            sup,
            arg: Box::new(arg),
        }
    }

    /// The level (actual subgroup mask) of the expression, checking
    /// consistency of every node against the generator levels.
    pub fn infer_level(&self, gen_levels: &[Mask]) -> Result<Mask> {
        match self {
            FormalExpr::Gen(i) => gen_levels
                .get(*i)
                .copied()
                .ok_or_else(|| Error::Mismatch(format!("unknown generator {i}"))),
            FormalExpr::IntConst(m, _) | FormalExpr::Const(m, _) => Ok(*m),
            FormalExpr::Add(a, b) | FormalExpr::Mul(a, b) => {
                let la = a.infer_level(gen_levels)?;
                let lb = b.infer_level(gen_levels)?;
                if la != lb {
                    return Err(Error::Mismatch(
                        "binary operation joins different levels".into(),
                    ));
                }
                Ok(la)
            }
            FormalExpr::Neg(a) => a.infer_level(gen_levels),
            FormalExpr::Res { sub, sup, arg } => {
                if arg.infer_level(gen_levels)? != *sup || sub & sup != *sub {
                    return Err(Error::Mismatch("restriction levels inconsistent".into()));
                }
                Ok(*sub)
            }
            FormalExpr::Tr { sub, sup, arg } | FormalExpr::Nm { sub, sup, arg } => {
                if arg.infer_level(gen_levels)? != *sub || sub & sup != *sub {
                    return Err(Error::Mismatch("transfer/norm levels inconsistent".into()));
                }
                Ok(*sup)
            }
            FormalExpr::Conj { arg, .. } => arg.infer_level(gen_levels),
        }
    }
}

/// Evaluate an expression in a functor under a generator assignment
/// (elements in stored coordinates at the generators' levels). Returns the
/// level mask and the value.
pub fn eval_expr(
    expr: &FormalExpr,
    t: &TambaraFunctor,
    gen_levels: &[Mask],
    assign: &[Elt],
) -> Result<(Mask, Elt)> {
    match expr {
        FormalExpr::Gen(i) => {
            let m = gen_levels
                .get(*i)
                .ok_or_else(|| Error::Mismatch(format!("unknown generator {i}")))?;
            let cls = t.lattice().class_of_mask(*m)?;
            if !t.level(cls).contains(&assign[*i]) {
                return Err(Error::Mismatch(format!(
                    "assignment for generator {i} is not in its level"
                )));
            }
            Ok((*m, assign[*i].clone()))
        }
        FormalExpr::IntConst(m, n) => {
            let cls = t.lattice().class_of_mask(*m)?;
            Ok((*m, t.level(cls).from_int(*n)))
        }
        FormalExpr::Const(m, e) => {
            let cls = t.lattice().class_of_mask(*m)?;
            if !t.level(cls).contains(e) {
                return Err(Error::Mismatch(format!("constant {e} not in its level")));
            }
            Ok((*m, e.clone()))
        }
        FormalExpr::Add(a, b) | FormalExpr::Mul(a, b) => {
            let (ma, va) = eval_expr(a, t, gen_levels, assign)?;
            let (mb, vb) = eval_expr(b, t, gen_levels, assign)?;
            if ma != mb {
                return Err(Error::Mismatch("operands at different levels".into()));
            }
            let ring = t.level(t.lattice().class_of_mask(ma)?);
            let v = match expr {
                FormalExpr::Add(_, _) => ring.add(&va, &vb),
                _ => ring.mul(&va, &vb),
            };
            Ok((ma, v))
        }
        FormalExpr::Neg(a) => {
            let (m, v) = eval_expr(a, t, gen_levels, assign)?;
            let ring = t.level(t.lattice().class_of_mask(m)?);
            Ok((m, ring.neg(&v)))
        }
        FormalExpr::Res { sub, sup, arg } => {
            let (m, v) = eval_expr(arg, t, gen_levels, assign)?;
            if m != *sup {
                return Err(Error::Mismatch("restriction source level mismatch".into()));
            }
            Ok(t.arrow_res(*sub, (m, v)))
        }
        FormalExpr::Tr { sub, sup, arg } => {
            let (m, v) = eval_expr(arg, t, gen_levels, assign)?;
            if m != *sub {
                return Err(Error::Mismatch("transfer source level mismatch".into()));
            }
            Ok(t.arrow_tr(*sup, (m, v)))
        }
        FormalExpr::Nm { sub, sup, arg } => {
            let (m, v) = eval_expr(arg, t, gen_levels, assign)?;
            if m != *sub {
                return Err(Error::Mismatch("norm source level mismatch".into()));
            }
            t.arrow_nm(*sup, (m, v))
        }
        FormalExpr::Conj { g, arg } => {
            let (m, v) = eval_expr(arg, t, gen_levels, assign)?;
            Ok(t.arrow_conj(*g, (m, v)))
        }
    }
}

/// A finitely generated presentation: generators at levels and relations as
/// pairs of expressions. Homs out of the presented algebra into a functor
/// are exactly the generator assignments satisfying the relations (the
/// universal property of the free algebra and its quotient).
#[derive(Debug, Clone)]
pub struct FreePresentation {
    pub gens: Vec<Mask>,
    pub relations: Vec<(FormalExpr, FormalExpr)>,
}

impl FreePresentation {
    pub fn free_on_one(level: Mask) -> FreePresentation {
        FreePresentation {
            gens: vec![level],
            relations: Vec::new(),
        }
    }
}

/// All generator assignments extending to homs: the assignments into the
/// levels of `t` that satisfy every relation.
pub fn presentation_homs(
    p: &FreePresentation,
    t: &TambaraFunctor,
    cap: u64,
) -> Result<Vec<Vec<Elt>>> {
    for (l, r) in &p.relations {
        let ll = l.infer_level(&p.gens)?;
        let rl = r.infer_level(&p.gens)?;
        if ll != rl {
            return Err(Error::Mismatch("relation sides at different levels".into()));
        }
    }
    let lat = t.lattice();
    let domains: Vec<Vec<Elt>> = p
        .gens
        .iter()
        .map(|m| t.level(lat.class_of_mask(*m)?).enumerate())
        .collect::<Result<_>>()?;
    let total: u64 = domains
        .iter()
        .map(|d| d.len() as u64)
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::CapExceeded(format!(
            "assignment space of size {total} exceeds cap {cap}"
        )));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; p.gens.len()];
    loop {
        let assign: Vec<Elt> = idx
            .iter()
            .zip(domains.iter())
            .map(|(&i, d)| d[i].clone())
            .collect();
        let mut ok = true;
        for (l, r) in &p.relations {
            let (_, lv) = eval_expr(l, t, &p.gens, &assign)?;
            let (_, rv) = eval_expr(r, t, &p.gens, &assign)?;
            if lv != rv {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(assign);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < domains[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if p.gens.is_empty() {
            return Ok(out);
        }
    }
}

/// All expressions tr_L^K(∏ nm_{M}^L res_M(x)) with total degree in the
/// given bound, for a generator x at level `gen_level`, output at the
/// representative of `out_class`. L ranges over subgroups of rep(out) up to
/// rep(out)-conjugacy and the M's over subgroups of L (contained in the
/// generator's level) up to L-conjugacy; twists beyond those collapse.
pub fn level_generators(
    lat: &SubgroupLattice,
    gen_level: Mask,
    out_class: usize,
    bound: usize,
) -> Vec<FormalExpr> {
    let group = lat.group();
    let rep_k = lat.rep(out_class);
    // L up to rep(out)-conjugacy.
    let mut l_reps: Vec<Mask> = Vec::new();
    for &l in lat.subgroups() {
        if l & rep_k != l {
            continue;
        }
        let already = l_reps.iter().any(|&l0| {
            crate::groups::mask_elements(rep_k).any(|g| group.conj_mask(g, l0) == l)
        });
        if !already {
            l_reps.push(l);
        }
    }
    let mut out = Vec::new();
    for &l in &l_reps {
        // Factor shapes: M ⊆ L with M ⊆ gen_level, up to L-conjugacy.
        let mut m_reps: Vec<Mask> = Vec::new();
        for &m in lat.subgroups() {
            if m & l != m || m & gen_level != m {
                continue;
            }
            let already = m_reps.iter().any(|&m0| {
                crate::groups::mask_elements(l).any(|g| group.conj_mask(g, m0) == m)
            });
            if !already {
                m_reps.push(m);
            }
        }
        let degrees: Vec<usize> = m_reps.iter().map(|&m| mask_len(l) / mask_len(m)).collect();
        // Multisets of factors with total degree in 1..=bound.
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(0, 0, Vec::new())];
        while let Some((pos, deg, counts)) = stack.pop() {
            if pos == m_reps.len() {
                if deg >= 1 {
                    let mut factors: Vec<FormalExpr> = Vec::new();
                    for (mi, &count) in counts.iter().enumerate() {
                        for _ in 0..count {
                            let m = m_reps[mi];
                            factors.push(FormalExpr::nm(
                                m,
                                l,
                                FormalExpr::res(m, gen_level, FormalExpr::gen(0)),
                            ));
                        }
                    }
                    let product = factors
                        .into_iter()
                        .reduce(FormalExpr::mul)
                        .expect("degree ≥ 1");
                    out.push(if l == rep_k {
                        product
                    } else {
                        FormalExpr::tr(l, rep_k, product)
                    });
                }
                continue;
            }
            let step = degrees[pos];
            let mut c = 0;
            loop {
                let d = deg + c * step;
                if d > bound {
                    break;
                }
                let mut counts2 = counts.clone();
                counts2.push(c);
                stack.push((pos + 1, d, counts2));
                c += 1;
            }
        }
    }
    out
}

/// The monic polynomial p(x) = nm(x − a) of degree [H : K] witnessing that
/// a (at level K = `sub`) is integral over the level at H = `sup_class`.
/// Requires injective restrictions to the bottom level: coefficients are
/// computed at the bottom via translate products and lifted back through
/// the restriction. Returns little-endian coefficients over the level at
/// `sup_class`; p(res a) = 0 is verified before returning.
pub fn integrality_witness(
    t: &TambaraFunctor,
    sub: Mask,
    sup_class: usize,
    a: &Elt,
) -> Result<Vec<Elt>> {
    let lat = t.lattice().clone();
    let rep_h = lat.rep(sup_class);
    if sub & rep_h != sub {
        return Err(Error::Precondition(
            "witness needs the element's subgroup inside the target representative".into(),
        ));
    }
    if !t.is_mrc()? {
        return Err(Error::UnsupportedNorm(
            "integrality witness needs injective restrictions to the bottom level".into(),
        ));
    }
    let e_mask = t.group().id_mask();
    let e_cls = lat.bottom();
    let e_ring = t.level(e_cls).clone();
    let (_, alpha) = t.arrow_res(e_mask, (sub, a.clone()));
    // ∏ over cosets c·sub of rep(h): (x − c·α), computed at the bottom.
    let mut poly: Vec<Elt> = vec![e_ring.one()];
    for c in transversal_in(t.group(), rep_h, sub) {
        let root = t.weyl_act(e_cls, c, &alpha);
        // poly ← poly·x − root·poly
        let mut next = vec![e_ring.zero(); poly.len() + 1];
        for (i, co) in poly.iter().enumerate() {
            next[i + 1] = e_ring.add(&next[i + 1], co);
            next[i] = e_ring.sub(&next[i], &e_ring.mul(&root, co));
        }
        poly = next;
    }
    // Lift through the injective restriction to the level at sup_class.
    let h_ring = t.level(sup_class);
    let h_elems = h_ring.enumerate()?;
    let mut lifted = Vec::with_capacity(poly.len());
    for co in &poly {
        let found = h_elems.iter().find(|x| {
            let (_, img) = t.arrow_res(e_mask, (rep_h, (*x).clone()));
            img == *co
        });
        match found {
            Some(x) => lifted.push(x.clone()),
            None => {
                return Err(Error::Inconsistency(
                    "coefficient has no preimage under the restriction".into(),
                ))
            }
        }
    }
    let degree = mask_len(rep_h) / mask_len(sub);
    if lifted.len() != degree + 1 || lifted[degree] != h_ring.one() {
        return Err(Error::Inconsistency("witness is not monic".into()));
    }
    // p(res-image of a) = 0 at the level of a.
    let sub_cls = lat.class_of_mask(sub)?;
    let sub_ring = t.level(sub_cls);
    let mut acc = sub_ring.zero();
    for co in lifted.iter().rev() {
        let (_, co_down) = t.arrow_res(sub, (rep_h, co.clone()));
        acc = sub_ring.add(&sub_ring.mul(&acc, a), &co_down);
    }
    if !sub_ring.is_zero(&acc) {
        return Err(Error::Inconsistency("witness does not annihilate a".into()));
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{coinduce, constant, fixed_point};
    use crate::groups::FiniteGroup;
    use crate::rings::{GRing, GaloisField, Ring};
    use alloc::sync::Arc;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn eval_generator_is_identity() {
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let full = t.group().full_mask();
        let a = t.level(1).from_int(2);
        let (m, v) = eval_expr(&FormalExpr::gen(0), &t, &[full], &[a.clone()]).unwrap();
        assert_eq!((m, v), (full, a));
    }

    #[test]
    fn norm_restriction_identity_on_constant() {
        // nm_e^{C2}(res_e(x)) = x² in constant F3.
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let full = t.group().full_mask();
        let e = t.group().id_mask();
        let expr = FormalExpr::nm(e, full, FormalExpr::res(e, full, FormalExpr::gen(0)));
        for a in t.level(1).enumerate().unwrap() {
            let (_, v) = eval_expr(&expr, &t, &[full], &[a.clone()]).unwrap();
            assert_eq!(v, t.level(1).mul(&a, &a));
        }
    }

    #[test]
    fn norm_of_sum_matches_expansion() {
        // nm(res x + res y) vs nm applied to the sum directly, in the
        // fixed-point functor of Fun(C2, F3).
        let t = coinduce(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let e = t.group().id_mask();
        let full = t.group().full_mask();
        let gens = [e, e];
        let sum = FormalExpr::add(FormalExpr::gen(0), FormalExpr::gen(1));
        let nm_sum = FormalExpr::nm(e, full, sum);
        let ring = t.level(0).clone();
        for a in ring.enumerate().unwrap() {
            for b in ring.enumerate().unwrap() {
                let (_, v) = eval_expr(&nm_sum, &t, &gens, &[a.clone(), b.clone()]).unwrap();
                let direct = t.nm_prim(e, 1, &ring.add(&a, &b)).unwrap();
                assert_eq!(v, direct);
            }
        }
    }

    #[test]
    fn level_generators_trivial_group() {
        let lat = SubgroupLattice::new(Arc::new(FiniteGroup::trivial()));
        let full = lat.group().full_mask();
        let gens = level_generators(&lat, full, 0, 3);
        // Monomials x, x², x³.
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn level_generators_c2_example() {
        // Top-level generator, output at the top, bound 2:
        // x, x², nm res x, tr res x, tr((res x)²) after collapsing twists.
        let lat = SubgroupLattice::new(Arc::new(FiniteGroup::cyclic(2)));
        let full = lat.group().full_mask();
        let gens = level_generators(&lat, full, 1, 2);
        assert_eq!(gens.len(), 5);
        // Finite for every bound.
        assert!(level_generators(&lat, full, 1, 4).len() > 5);
    }

    #[test]
    fn presentation_hom_counts() {
        // Free on one top-level generator into constant F3: 3 assignments.
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let p = FreePresentation::free_on_one(t.group().full_mask());
        assert_eq!(presentation_homs(&p, &t, 1 << 20).unwrap().len(), 3);
        // Relation 1 = 0 kills everything.
        let full = t.group().full_mask();
        let bad = FreePresentation {
            gens: vec![full],
            relations: vec![(FormalExpr::IntConst(full, 1), FormalExpr::IntConst(full, 0))],
        };
        assert!(presentation_homs(&bad, &t, 1 << 20).unwrap().is_empty());
    }

    #[test]
    fn witness_degree_one() {
        // K = H: p(x) = x − a.
        let t = constant(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let full = t.group().full_mask();
        let a = t.level(1).from_int(2);
        let p = integrality_witness(&t, full, 1, &a).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1], t.level(1).one());
        assert_eq!(p[0], t.level(1).neg(&a));
    }

    #[test]
    fn witness_f4_over_f2() {
        // Fixed points of F4 with Frobenius: a ∉ F2 has p(x) = x² + x + 1.
        let gr = GRing::frobenius(c2(), GaloisField::new(2, 2).unwrap()).unwrap();
        let t = fixed_point(gr).unwrap();
        let e = t.group().id_mask();
        let f2_one = t.level(1).one();
        for a in t.level(0).enumerate().unwrap() {
            let in_f2 = t.level(1).contains(&a);
            let p = integrality_witness(&t, e, 1, &a).unwrap();
            assert_eq!(p.len(), 3);
            assert_eq!(p[2], f2_one);
            if !in_f2 {
                // Exactly x² + x + 1.
                assert_eq!(p[1], f2_one);
                assert_eq!(p[0], f2_one);
            }
        }
    }

    #[test]
    fn witness_coinduced_f3() {
        // coinduce(F3) over C2, a = (1,2): p(x) = (x−1)(x−2) = x² + 2 over
        // the diagonal F3.
        let t = coinduce(c2(), Ring::gf(3, 1).unwrap()).unwrap();
        let e = t.group().id_mask();
        let f3 = Ring::gf(3, 1).unwrap();
        let a = Elt::Tuple(alloc::vec![f3.from_int(1), f3.from_int(2)]);
        let p = integrality_witness(&t, e, 1, &a).unwrap();
        let top = t.level(1);
        assert_eq!(p.len(), 3);
        assert_eq!(p[2], top.one());
        assert_eq!(p[1], top.zero());
        assert_eq!(p[0], top.from_int(2));
    }
}
