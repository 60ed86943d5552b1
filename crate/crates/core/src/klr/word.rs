use crate::cartan::{Seq, ValidatedCartan};

use super::{Atom, KlrError};

/// A diagram given by its bottom sequence and atoms read bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramWord {
    pub bottom: Seq,
    pub atoms: Vec<Atom>,
}

impl DiagramWord {
    pub fn new(bottom: Seq, atoms: Vec<Atom>) -> Result<Self, KlrError> {
        let n = bottom.len();
        for &a in &atoms {
            let ok = match a {
                Atom::Dot(k) => k < n,
                Atom::Cross(k) => k + 1 < n,
            };
            if !ok {
                return Err(KlrError::IndexOutOfRange { atom: a.to_string(), strands: n });
            }
        }
        Ok(DiagramWord { bottom, atoms })
    }

    /// The idempotent `1_i`.
    pub fn identity(bottom: Seq) -> Self {
        DiagramWord { bottom, atoms: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.bottom.len()
    }

    /// Sequences between atoms: entry `m` is the sequence just below atom `m`,
    /// the last entry is the top.
    pub fn levels(&self) -> Vec<Seq> {
        let mut out = Vec::with_capacity(self.atoms.len() + 1);
        let mut cur = self.bottom.clone();
        for &a in &self.atoms {
            let next = match a {
                Atom::Cross(k) => cur.swapped(k),
                Atom::Dot(_) => cur.clone(),
            };
            out.push(cur);
            cur = next;
        }
        out.push(cur);
        out
    }

    pub fn top(&self) -> Seq {
        let mut cur = self.bottom.clone();
        for &a in &self.atoms {
            if let Atom::Cross(k) = a {
                cur = cur.swapped(k);
            }
        }
        cur
    }

    /// Dots have degree `i.i`, a crossing of `i` and `j` degree `-i.j`.
    pub fn degree(&self, datum: &ValidatedCartan) -> i64 {
        let mut cur = self.bottom.clone();
        let mut deg = 0;
        for &a in &self.atoms {
            match a {
                Atom::Dot(k) => deg += datum.dot(cur.0[k], cur.0[k]),
                Atom::Cross(k) => {
                    deg -= datum.dot(cur.0[k], cur.0[k + 1]);
                    cur = cur.swapped(k);
                }
            }
        }
        deg
    }

    /// The diagram reflected top to bottom.
    pub fn reversed(&self) -> Self {
        DiagramWord { bottom: self.top(), atoms: self.atoms.iter().rev().copied().collect() }
    }

    /// Parses `bot=i,j,i; atoms=x1,c2,x3^2,c1` (1-based indices).
    pub fn parse(text: &str, datum: &ValidatedCartan) -> Result<Self, KlrError> {
        let mut bottom = None;
        let mut atoms = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) =
                part.split_once('=').ok_or_else(|| KlrError::Parse(format!("expected key=value, got `{part}`")))?;
            let items: Vec<&str> = value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            match key.trim() {
                "bot" => bottom = Some(Seq(items.iter().map(|n| datum.vertex(n)).collect::<Result<_, _>>()?)),
                "atoms" => atoms = Some(items.iter().map(|t| parse_atom(t)).collect::<Result<Vec<_>, _>>()?),
                other => return Err(KlrError::Parse(format!("unknown field `{other}`"))),
            }
        }
        let bottom = bottom.ok_or_else(|| KlrError::Parse("missing `bot=`".into()))?;
        Self::new(bottom, atoms.unwrap_or_default().concat())
    }

    pub fn render(&self, datum: &ValidatedCartan) -> String {
        format!("bot={}; atoms={}", datum.fmt_seq(&self.bottom), render_atoms(&self.atoms))
    }
}

/// Atoms joined by commas, runs of equal dots written `xk^n`.
pub(crate) fn render_atoms(atoms: &[Atom]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut m = 0;
    while m < atoms.len() {
        let mut run = 1;
        if let Atom::Dot(_) = atoms[m] {
            while m + run < atoms.len() && atoms[m + run] == atoms[m] {
                run += 1;
            }
        }
        if run > 1 {
            parts.push(format!("{}^{run}", atoms[m]));
        } else {
            parts.push(atoms[m].to_string());
        }
        m += run;
    }
    parts.join(",")
}

fn parse_atom(token: &str) -> Result<Vec<Atom>, KlrError> {
    let bad = || KlrError::Parse(format!("bad atom `{token}`"));
    let (head, power) = match token.split_once('^') {
        Some((h, p)) => (h, p.parse::<usize>().map_err(|_| bad())?),
        None => (token, 1),
    };
    let mut chars = head.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let k: usize = chars.as_str().parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    match kind {
        'x' => Ok(vec![Atom::Dot(k - 1); power]),
        'c' if power == 1 => Ok(vec![Atom::Cross(k - 1)]),
        _ => Err(bad()),
    }
}
