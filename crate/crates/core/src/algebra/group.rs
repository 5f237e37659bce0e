use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Index 0 is always the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// `C_n` with `table[i][j] = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_table(table, Some(names))
    }

    /// Validates a Cayley table. If the identity sits at some index other
    /// than 0 the elements are relabelled so that it moves to 0.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedTable(format!("entry {x} in row {i} is out of range")));
            }
        }
        if let Some(ref names) = names {
            if names.len() != n {
                return Err(Error::MalformedTable(format!("{} names for {n} elements", names.len())));
            }
        }
        for i in 0..n {
            if !is_permutation((0..n).map(|j| table[i][j]), n) {
                return Err(Error::NotLatin { axis: "row", index: i });
            }
            if !is_permutation((0..n).map(|j| table[j][i]), n) {
                return Err(Error::NotLatin { axis: "column", index: i });
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
                return Err(Error::NoInverse(x));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative((a, b, c)));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let (table, names) = if e == 0 {
            (table, names)
        } else {
            // Swap labels e <-> 0.
            let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
            let mut t = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    t[relabel(a)][relabel(b)] = relabel(table[a][b]);
                }
            }
            let mut nm = names;
            nm.swap(0, e);
            (t, nm)
        };
        let inverses = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == 0).expect("inverse exists"))
            .collect();
        Ok(FiniteGroup {
            table,
            names,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// `x^-1 a x`.
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverse(x), a), x)
    }

    /// The subgroup on `elements` as a group in its own right, together with
    /// the embedding (subgroup index -> index here). Elements are ordered by
    /// their index in this group, so the identity stays first.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut emb: Vec<usize> = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if emb.first() != Some(&0) {
            return Err(Error::MalformedTable("subgroup must contain the identity".into()));
        }
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = vec![vec![0; emb.len()]; emb.len()];
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::MalformedTable(format!("subset not closed at ({a}, {b})")));
                }
                table[i][j] = p;
            }
        }
        let names = emb.iter().map(|&x| self.names[x].clone()).collect();
        Ok((FiniteGroup::from_table(table, Some(names))?, emb))
    }
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in it {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Group JSON: `{"order": n, "names": [...], "table": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            names: Some(g.names.clone()),
            table: g.table.clone(),
        }
    }
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;
    fn try_from(j: GroupJson) -> Result<Self> {
        if j.order != j.table.len() {
            return Err(Error::MalformedTable(format!(
                "order {} but table has {} rows",
                j.order,
                j.table.len()
            )));
        }
        FiniteGroup::from_table(j.table, j.names)
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GroupJson::deserialize(d)?;
        FiniteGroup::try_from(j).map_err(serde::de::Error::custom)
    }
}
