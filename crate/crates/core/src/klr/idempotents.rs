use crate::cartan::{Seq, SeqD, Vertex};
use crate::nilhecke::NHOperator;

use super::{Atom, DiagramWord, KLRElement, KlrAlgebra};

/// Atoms of `e_{i_1,n_1} (x) ... (x) e_{i_r,n_r}`, blocks side by side.
pub fn e_block_atoms(s: &SeqD) -> Vec<Atom> {
    let mut atoms = Vec::new();
    let mut off = 0;
    for &(_, n) in &s.0 {
        let n = n as usize;
        atoms.extend(NHOperator::e_idempotent(n).atoms.iter().map(|a| a.shifted(off)));
        off += n;
    }
    atoms
}

/// `e_{i,m} = x_1^{m-1} ... x_{m-1} partial_{w_0}` in `R(m i)`.
pub fn special_idempotent(alg: &KlrAlgebra, i: Vertex, m: u32) -> KLRElement {
    e_block(alg, &SeqD(vec![(i, m)]))
}

/// The divided-power idempotent of a sequence of blocks.
pub fn e_block(alg: &KlrAlgebra, s: &SeqD) -> KLRElement {
    let bottom: Seq = s.flatten();
    alg.normal_form(&DiagramWord { bottom, atoms: e_block_atoms(s) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;

    #[test]
    fn idempotent_examples() {
        let c = CartanDatum::new(vec!["i", "j"], vec![vec![2, -1], vec![-1, 2]]).validate().unwrap();
        let alg = KlrAlgebra::new(c);
        let (i, j) = (Vertex(0), Vertex(1));
        assert_eq!(special_idempotent(&alg, i, 1), KLRElement::identity(Seq(vec![i])));
        let e2 = special_idempotent(&alg, i, 2);
        assert_eq!(alg.multiply(&e2, &e2), e2);
        assert!(e2.is_homogeneous(alg.datum()));
        let e3 = special_idempotent(&alg, i, 3);
        assert_eq!(alg.multiply(&e3, &e3), e3);
        let blk = e_block(&alg, &SeqD(vec![(i, 1), (j, 1)]));
        assert_eq!(blk, KLRElement::identity(Seq(vec![i, j])));
    }
}
