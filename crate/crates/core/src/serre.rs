//! The categorified Serre relation: the maps `alpha^+`, `alpha^-` between
//! divided-power projectives and the identities among their composites.

use thiserror::Error;

use crate::cartan::{CartanError, Seq, SeqD, ValidatedCartan, Vertex};
use crate::klr::{e_block, e_block_atoms, Atom, DiagramWord, KLRElement, KlrAlgebra};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerreError {
    #[error("need a + b = {} with the moved block nonempty, got ({a}, {b})", .d + 1)]
    BadBidegree { a: u32, b: u32, d: u32 },
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// A pair of distinct vertices with optional vertical strands on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreContext {
    pub i: Vertex,
    pub j: Vertex,
    pub d: u32,
    pub left: Seq,
    pub right: Seq,
}

impl SerreContext {
    pub fn new(datum: &ValidatedCartan, i: Vertex, j: Vertex) -> Result<Self, SerreError> {
        let d = datum.d_coeff(i, j)?;
        Ok(SerreContext { i, j, d, left: Seq::default(), right: Seq::default() })
    }

    pub fn padded(mut self, left: Seq, right: Seq) -> Self {
        self.left = left;
        self.right = right;
        self
    }

    /// `i' i^(a) j i^(b) i''`, dropping empty blocks.
    pub fn blocks(&self, a: u32, b: u32) -> SeqD {
        let mut s: Vec<(Vertex, u32)> = self.left.0.iter().map(|&v| (v, 1)).collect();
        s.extend([(self.i, a), (self.j, 1), (self.i, b)].into_iter().filter(|&(_, n)| n > 0));
        s.extend(self.right.0.iter().map(|&v| (v, 1)));
        SeqD(s)
    }

    pub fn seq(&self, a: u32, b: u32) -> Seq {
        self.blocks(a, b).flatten()
    }

    fn check(&self, a: u32, b: u32, moved: u32) -> Result<(), SerreError> {
        if a + b != self.d + 1 || moved == 0 {
            return Err(SerreError::BadBidegree { a, b, d: self.d });
        }
        Ok(())
    }

    /// `e_{i,a} (x) 1_j (x) e_{i,b}`, the identity of the divided-power projective.
    pub fn unit(&self, alg: &KlrAlgebra, a: u32, b: u32) -> KLRElement {
        e_block(alg, &self.blocks(a, b))
    }
}

fn assemble(alg: &KlrAlgebra, ctx: &SerreContext, a: u32, b: u32, crossings: Vec<usize>, top: SeqD) -> KLRElement {
    let off = ctx.left.len();
    let mut atoms: Vec<Atom> = crossings.into_iter().map(|k| Atom::Cross(k + off)).collect();
    atoms.extend(e_block_atoms(&top));
    alg.normal_form(&DiagramWord { bottom: ctx.seq(a, b), atoms })
}

/// The last `i` strand crosses to the left of `j`; `e_{i,a+1}` and
/// `e_{i,b-1}` on top.
pub fn alpha_plus(alg: &KlrAlgebra, ctx: &SerreContext, a: u32, b: u32) -> Result<KLRElement, SerreError> {
    ctx.check(a, b, b)?;
    let (a_, b_) = (a as usize, b as usize);
    let crossings = (a_..a_ + b_).rev().collect();
    Ok(assemble(alg, ctx, a, b, crossings, ctx.blocks(a + 1, b - 1)))
}

/// The first `i` strand crosses to the right of `j`; `e_{i,a-1}` and
/// `e_{i,b+1}` on top.
pub fn alpha_minus(alg: &KlrAlgebra, ctx: &SerreContext, a: u32, b: u32) -> Result<KLRElement, SerreError> {
    ctx.check(a, b, a)?;
    let crossings = (0..a as usize).collect();
    Ok(assemble(alg, ctx, a, b, crossings, ctx.blocks(a - 1, b + 1)))
}

fn label(ctx: &SerreContext, datum: &ValidatedCartan) -> String {
    let mut s = format!("{},{};d={}", datum.name(ctx.i), datum.name(ctx.j), ctx.d);
    if !ctx.left.is_empty() || !ctx.right.is_empty() {
        s += &format!(";pad={}|{}", datum.fmt_seq(&ctx.left), datum.fmt_seq(&ctx.right));
    }
    s
}

fn push_eq(report: &mut Report, datum: &ValidatedCartan, id: String, lhs: &KLRElement, rhs: &KLRElement) {
    let residual = lhs.sub(rhs);
    if residual.is_zero() {
        report.push(id, true, format!("{} terms", rhs.len()));
    } else {
        report.push(id, false, format!("residual {} terms: {}", residual.len(), residual.render(datum).replace('\n', " | ")));
    }
}

/// The composite identities between neighbouring projectives.
pub fn verify_composites(alg: &KlrAlgebra, ctx: &SerreContext) -> Result<Report, SerreError> {
    let datum = alg.datum();
    let d = ctx.d;
    let tag = label(ctx, datum);
    let mut report = Report::new();
    let sign = |n: u32| if n.is_multiple_of(2) { 1 } else { -1 };
    for a in 1..=d {
        let b = d + 1 - a;
        let lhs = alg
            .multiply(&alpha_plus(alg, ctx, a - 1, b + 1)?, &alpha_minus(alg, ctx, a, b)?)
            .sub(&alg.multiply(&alpha_minus(alg, ctx, a + 1, b - 1)?, &alpha_plus(alg, ctx, a, b)?));
        let rhs = ctx.unit(alg, a, b).scale(sign(a - 1));
        push_eq(&mut report, datum, format!("serre.composite[{tag};a={a},b={b}]"), &lhs, &rhs);
    }
    let lhs = alg.multiply(&alpha_minus(alg, ctx, 1, d)?, &alpha_plus(alg, ctx, 0, d + 1)?);
    push_eq(&mut report, datum, format!("serre.left_end[{tag}]"), &lhs, &ctx.unit(alg, 0, d + 1));
    let lhs = alg.multiply(&alpha_plus(alg, ctx, d, 1)?, &alpha_minus(alg, ctx, d + 1, 0)?);
    push_eq(&mut report, datum, format!("serre.right_end[{tag}]"), &lhs, &ctx.unit(alg, d + 1, 0).scale(sign(d)));
    Ok(report)
}

/// `<s> = sum_k n_k (n_k - 1) / 2 * (i_k . i_k) / 2`.
pub fn shift(s: &SeqD, datum: &ValidatedCartan) -> i64 {
    s.0.iter().map(|&(v, n)| (n as i64) * (n as i64 - 1) / 2 * datum.half_norm(v)).sum()
}

/// Every `alpha^{+/-}` is homogeneous of degree `<top> - <bottom>`, so it
/// induces a grading-preserving map of shifted projectives.
pub fn verify_degrees(alg: &KlrAlgebra, ctx: &SerreContext) -> Result<Report, SerreError> {
    let datum = alg.datum();
    let tag = label(ctx, datum);
    let mut report = Report::new();
    for a in 0..=ctx.d + 1 {
        let b = ctx.d + 1 - a;
        let mut cases = Vec::new();
        if b >= 1 {
            cases.push(("plus", alpha_plus(alg, ctx, a, b)?, ctx.blocks(a + 1, b - 1)));
        }
        if a >= 1 {
            cases.push(("minus", alpha_minus(alg, ctx, a, b)?, ctx.blocks(a - 1, b + 1)));
        }
        for (name, x, top) in cases {
            let want = shift(&top, datum) - shift(&ctx.blocks(a, b), datum);
            let degs = x.degrees(datum);
            let ok = !x.is_zero() && degs.iter().all(|&g| g == want);
            report.push(format!("serre.degree[{tag};{name};a={a},b={b}]"), ok, format!("degrees {degs:?}, expected {want}"));
        }
    }
    Ok(report)
}

/// A matrix over `R(nu)`, indexed by `a` of the projectives `(a, d+1-a)`.
type Matrix = Vec<(u32, u32, KLRElement)>;

fn mat_mul(alg: &KlrAlgebra, x: &Matrix, y: &Matrix) -> Vec<((u32, u32), KLRElement)> {
    let mut out: Vec<((u32, u32), KLRElement)> = Vec::new();
    for (r, m, a) in x {
        for (m2, c, b) in y {
            if m != m2 {
                continue;
            }
            let p = alg.multiply(a, b);
            match out.iter_mut().find(|(k, _)| *k == (*r, *c)) {
                Some((_, acc)) => *acc = acc.add(&p),
                None => out.push(((*r, *c), p)),
            }
        }
    }
    out
}

/// `alpha'` from the even projectives to the odd ones and `alpha''` back are
/// mutually inverse: both products are the diagonal matrices of units.
pub fn verify_iso(alg: &KlrAlgebra, ctx: &SerreContext) -> Result<Report, SerreError> {
    let datum = alg.datum();
    let d = ctx.d;
    let tag = label(ctx, datum);
    // entries (row = target a, column = source a, element)
    let mut fwd: Matrix = Vec::new();
    let mut back: Matrix = Vec::new();
    for a in 0..=d + 1 {
        let b = d + 1 - a;
        let unit = ctx.unit(alg, a, b);
        let (to, from) = if a % 2 == 0 { (&mut fwd, 1) } else { (&mut back, -1) };
        if b >= 1 {
            to.push((a + 1, a, alg.multiply(&alpha_plus(alg, ctx, a, b)?, &unit).scale(from)));
        }
        if a >= 1 {
            to.push((a - 1, a, alg.multiply(&alpha_minus(alg, ctx, a, b)?, &unit)));
        }
    }
    let mut report = Report::new();
    for (name, prod, parity) in [("odd", mat_mul(alg, &fwd, &back), 1), ("even", mat_mul(alg, &back, &fwd), 0)] {
        let mut bad = Vec::new();
        for a in (0..=d + 1).filter(|a| a % 2 == parity) {
            for c in (0..=d + 1).filter(|c| c % 2 == parity) {
                let got = prod.iter().find(|(k, _)| *k == (a, c)).map(|(_, e)| e.clone());
                let got = got.unwrap_or_else(|| KLRElement::zero(ctx.seq(c, d + 1 - c), ctx.seq(a, d + 1 - a)));
                let want = if a == c { ctx.unit(alg, a, d + 1 - a) } else { KLRElement::zero(got.bottom().clone(), got.top().clone()) };
                if got != want {
                    bad.push(format!("({a},{c})"));
                }
            }
        }
        let id = format!("serre.iso[{tag};{name}]");
        if bad.is_empty() {
            report.push(id, true, "diagonal of units");
        } else {
            report.push(id, false, format!("entries {} differ", bad.join(" ")));
        }
    }
    Ok(report)
}

/// Composites, degrees and the isomorphism for one context.
pub fn verify_all(alg: &KlrAlgebra, ctx: &SerreContext) -> Result<Report, SerreError> {
    let mut r = verify_composites(alg, ctx)?;
    r.extend(verify_degrees(alg, ctx)?);
    r.extend(verify_iso(alg, ctx)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    fn rank2(ij: i64) -> ValidatedCartan {
        let jj = -2 * ij;
        CartanDatum::new(vec!["i", "j"], vec![vec![2, ij], vec![ij, jj.max(2)]]).validate().unwrap()
    }

    #[test]
    fn bidegree_is_checked() {
        let c = rank2(-1);
        let alg = KlrAlgebra::new(c.clone());
        let ctx = SerreContext::new(&c, Vertex(0), Vertex(1)).unwrap();
        assert_eq!(alpha_plus(&alg, &ctx, 2, 0), Err(SerreError::BadBidegree { a: 2, b: 0, d: 1 }));
        assert_eq!(alpha_minus(&alg, &ctx, 0, 2), Err(SerreError::BadBidegree { a: 0, b: 2, d: 1 }));
        assert!(alpha_plus(&alg, &ctx, 0, 1).is_err());
        assert!(SerreContext::new(&c, Vertex(0), Vertex(0)).is_err());
    }

    #[test]
    fn shifts() {
        let c = rank2(-1);
        let (i, j) = (Vertex(0), Vertex(1));
        assert_eq!(shift(&SeqD(vec![(i, 2)]), &c), 1);
        assert_eq!(shift(&SeqD(vec![(i, 1), (j, 1)]), &c), 0);
        assert_eq!(shift(&SeqD(vec![(i, 3)]), &c), 3);
    }

    #[test]
    fn simply_laced_identities() {
        let c = rank2(-1);
        let alg = KlrAlgebra::new(c.clone());
        let ctx = SerreContext::new(&c, Vertex(0), Vertex(1)).unwrap();
        let r = verify_all(&alg, &ctx).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn b2_identities() {
        let c = rank2(-2);
        let alg = KlrAlgebra::new(c.clone());
        let ctx = SerreContext::new(&c, Vertex(0), Vertex(1)).unwrap();
        let r = verify_all(&alg, &ctx).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn sign_error_is_detected() {
        let c = rank2(-1);
        let alg = KlrAlgebra::new(c.clone());
        let ctx = SerreContext::new(&c, Vertex(0), Vertex(1)).unwrap();
        let lhs = alg.multiply(&alpha_plus(&alg, &ctx, 1, 1).unwrap(), &alpha_minus(&alg, &ctx, 2, 0).unwrap());
        assert_ne!(lhs, ctx.unit(&alg, 2, 0));
    }
}
