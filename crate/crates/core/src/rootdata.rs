//! Root data and coweight lattices of reductive groups.
//!
//! A group is presented as a product of simple factors of types A–G, either
//! simply connected (`sc`) or adjoint (`ad`), times a central torus of rank
//! `central_rank`. Coweights are stored in "pairing coordinates": entry `i`
//! is the pairing with the simple root `i`, followed by the central
//! coordinates. In these coordinates the simple coroot `j` is column `j` of
//! the Cartan matrix.
//!
//! Cartan convention: `A[i][j] = <coroot_j, root_i>`, computed from the Gram
//! matrix of the simple roots as `2 (r_i, r_j) / (r_j, r_j)`. With Bourbaki
//! numbering this gives `G2 = [[2,-1],[-3,2]]` (node 1 short), and for `B_n`
//! the entry `A[n-1][n] = -2` (node `n` short); `C_n` is the transpose.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, int, Rational};

/// A subset of the Dynkin vertex set, stored as a bitmask over 0-based
/// node indices. Text and JSON forms are 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const MAX_NODES: usize = 64;

    pub fn empty() -> Self {
        NodeSet(0)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        NodeSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn complement(self, rank: usize) -> NodeSet {
        NodeSet(!self.0 & NodeSet::full(rank).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1u64 << i) != 0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0, .., rank-1}` in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = NodeSet> {
        assert!(rank < 32, "subset enumeration limited to rank < 32");
        (0..(1u64 << rank)).map(NodeSet)
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn from_one_based(nodes: &[usize], rank: usize) -> Result<NodeSet> {
        let mut set = NodeSet::empty();
        for &n in nodes {
            if n == 0 || n > rank {
                return Err(Error::NodeOutOfRange { index: n, rank });
            }
            set.insert(n - 1);
        }
        Ok(set)
    }

    /// Parses `1,3` (1-based, comma separated; empty string is the empty set).
    pub fn parse(text: &str, rank: usize) -> Result<NodeSet> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        if text.trim().is_empty() {
            return Ok(NodeSet::empty());
        }
        let nodes = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid node index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        NodeSet::from_one_based(&nodes, rank)
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<usize>::deserialize(d)?;
        if nodes.iter().any(|&n| n == 0 || n > NodeSet::MAX_NODES) {
            return Err(serde::de::Error::custom("node indices are 1-based and at most 64"));
        }
        Ok(NodeSet::from_indices(nodes.into_iter().map(|n| n - 1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => SimpleType::A,
            'B' => SimpleType::B,
            'C' => SimpleType::C,
            'D' => SimpleType::D,
            'E' => SimpleType::E,
            'F' => SimpleType::F,
            'G' => SimpleType::G,
            _ => return None,
        })
    }

    fn allowed(self) -> &'static str {
        match self {
            SimpleType::A => ">= 1",
            SimpleType::B | SimpleType::C => ">= 2",
            SimpleType::D => ">= 3",
            SimpleType::E => "6, 7 or 8",
            SimpleType::F => "4",
            SimpleType::G => "2",
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    /// Closed-form number of roots.
    pub fn root_count(self, n: usize) -> usize {
        match self {
            SimpleType::A => n * (n + 1),
            SimpleType::B | SimpleType::C => 2 * n * n,
            SimpleType::D => 2 * n * (n - 1),
            SimpleType::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            SimpleType::F => 48,
            SimpleType::G => 12,
        }
    }

    /// Gram matrix of the simple roots (Bourbaki numbering), scaled to integers.
    fn gram(self, n: usize) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self {
            SimpleType::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 1..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            SimpleType::B => {
                for i in 0..n - 1 {
                    g[i][i] = 2;
                }
                g[n - 1][n - 1] = 1;
                for i in 1..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            SimpleType::C => {
                for i in 0..n - 1 {
                    g[i][i] = 2;
                }
                g[n - 1][n - 1] = 4;
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, -1);
                }
                link(&mut g, n - 2, n - 1, -2);
            }
            SimpleType::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, -1);
                }
                link(&mut g, n - 3, n - 1, -1);
            }
            SimpleType::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 3..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            SimpleType::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            SimpleType::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }

    /// `A[i][j] = 2 (r_i, r_j) / (r_j, r_j)`.
    pub fn cartan(self, n: usize) -> Vec<Vec<i64>> {
        let g = self.gram(n);
        (0..n)
            .map(|i| (0..n).map(|j| 2 * g[i][j] / g[j][j]).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isogeny {
    #[default]
    Sc,
    Ad,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub factors: Vec<(SimpleType, usize)>,
    pub isogeny: Isogeny,
    pub central_rank: usize,
}

impl GroupSpec {
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|&(_, n)| n).sum()
    }

    pub fn dimension(&self) -> usize {
        self.semisimple_rank() + self.central_rank
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Parse("group needs at least one simple factor".into()));
        }
        for &(t, n) in &self.factors {
            if !t.valid_rank(n) {
                return Err(Error::InvalidRank {
                    letter: t.letter(),
                    rank: n,
                    allowed: t.allowed(),
                });
            }
        }
        if self.semisimple_rank() > NodeSet::MAX_NODES {
            return Err(Error::RankTooLarge {
                rank: self.semisimple_rank(),
                limit: NodeSet::MAX_NODES,
            });
        }
        Ok(())
    }
}

/// Grammar: `factor ("x" factor)* (" " ("sc"|"ad"))? ("+Z" int)?`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    let bad = |why: &str| Error::Parse(format!("group spec `{text}`: {why}"));
    let (body, central_rank) = match text.rfind("+Z") {
        Some(pos) => {
            let n = text[pos + 2..]
                .parse::<usize>()
                .map_err(|_| bad("central rank after `+Z` must be a nonnegative integer"))?;
            (text[..pos].trim_end(), n)
        }
        None => (text, 0),
    };
    let mut tokens = body.split_whitespace();
    let factors_text = tokens.next().ok_or_else(|| bad("empty"))?;
    let isogeny = match tokens.next() {
        None => Isogeny::Sc,
        Some("sc") => Isogeny::Sc,
        Some("ad") => Isogeny::Ad,
        Some(other) => return Err(bad(&format!("unknown isogeny `{other}`"))),
    };
    if tokens.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let factors = factors_text
        .split('x')
        .map(|f| {
            let mut chars = f.chars();
            let letter = chars.next().ok_or_else(|| bad("empty factor"))?;
            let ty = SimpleType::from_letter(letter)
                .ok_or_else(|| bad(&format!("unknown type letter `{letter}`")))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad(&format!("factor `{f}` needs a rank")));
            }
            let n = digits.parse::<usize>().map_err(|_| bad("rank out of range"))?;
            Ok((ty, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = GroupSpec {
        factors,
        isogeny,
        central_rank,
    };
    spec.validate()?;
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .factors
            .iter()
            .map(|&(t, n)| format!("{}{}", t.letter(), n))
            .collect();
        write!(f, "{}", factors.join("x"))?;
        if self.isogeny == Isogeny::Ad {
            write!(f, " ad")?;
        }
        if self.central_rank > 0 {
            write!(f, "+Z{}", self.central_rank)?;
        }
        Ok(())
    }
}

/// A rational coweight in pairing coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coweight {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub pairings: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub central: Vec<Rational>,
}

impl Coweight {
    pub fn new(pairings: Vec<Rational>, central: Vec<Rational>) -> Self {
        Coweight { pairings, central }
    }

    pub fn zero(rank: usize, central_rank: usize) -> Self {
        Coweight {
            pairings: vec![Rational::zero(); rank],
            central: vec![Rational::zero(); central_rank],
        }
    }

    pub fn from_ints(pairings: &[i64], central: &[i64]) -> Self {
        Coweight {
            pairings: pairings.iter().map(|&x| int(x)).collect(),
            central: central.iter().map(|&x| int(x)).collect(),
        }
    }

    /// `1,-1;3/2`: pairings, then central coordinates after `;`.
    pub fn parse(text: &str) -> Result<Self> {
        let (p, c) = text.split_once(';').unwrap_or((text, ""));
        Ok(Coweight {
            pairings: rational::parse_rational_list(p)?,
            central: rational::parse_rational_list(c)?,
        })
    }

    pub fn pairing(&self, i: usize) -> &Rational {
        &self.pairings[i]
    }

    pub fn scale(&self, s: &Rational) -> Coweight {
        Coweight {
            pairings: self.pairings.iter().map(|x| x * s).collect(),
            central: self.central.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.pairings.iter().chain(&self.central).all(Zero::is_zero)
    }

    /// Zero-pairing nodes.
    pub fn walls(&self) -> NodeSet {
        NodeSet::from_indices((0..self.pairings.len()).filter(|&i| self.pairings[i].is_zero()))
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational::format_list(&self.pairings))?;
        if !self.central.is_empty() {
            write!(f, ";{}", rational::format_list(&self.central))?;
        }
        Ok(())
    }
}

fn zip_with(a: &[Rational], b: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "coweight dimension mismatch");
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl Add for &Coweight {
    type Output = Coweight;

    fn add(self, rhs: &Coweight) -> Coweight {
        Coweight {
            pairings: zip_with(&self.pairings, &rhs.pairings, |x, y| x + y),
            central: zip_with(&self.central, &rhs.central, |x, y| x + y),
        }
    }
}

impl Sub for &Coweight {
    type Output = Coweight;

    fn sub(self, rhs: &Coweight) -> Coweight {
        Coweight {
            pairings: zip_with(&self.pairings, &rhs.pairings, |x, y| x - y),
            central: zip_with(&self.central, &rhs.central, |x, y| x - y),
        }
    }
}

impl Neg for &Coweight {
    type Output = Coweight;

    fn neg(self) -> Coweight {
        Coweight {
            pairings: self.pairings.iter().map(|x| -x).collect(),
            central: self.central.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<&Rational> for &Coweight {
    type Output = Coweight;

    fn mul(self, rhs: &Rational) -> Coweight {
        self.scale(rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Negative,
}

/// A root, given by its coefficients in the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coefs: Vec<i64>,
}

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coefs = vec![0; rank];
        coefs[i] = 1;
        Root { coefs }
    }

    pub fn sign(&self) -> RootSign {
        if self.coefs.iter().any(|&c| c > 0) {
            RootSign::Positive
        } else {
            RootSign::Negative
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == RootSign::Positive
    }

    pub fn height(&self) -> i64 {
        self.coefs.iter().sum()
    }

    pub fn coef(&self, i: usize) -> i64 {
        self.coefs[i]
    }

    /// Nodes carrying a nonzero coefficient.
    pub fn support(&self) -> NodeSet {
        NodeSet::from_indices((0..self.coefs.len()).filter(|&i| self.coefs[i] != 0))
    }

    pub fn negated(&self) -> Root {
        Root {
            coefs: self.coefs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Root datum plus coweight lattice of a reductive group.
#[derive(Clone, Debug)]
pub struct GroupData {
    spec: GroupSpec,
    cartan: Vec<Vec<i64>>,
    cartan_q: Matrix,
    lattice_basis: Vec<Coweight>,
    roots: Vec<Root>,
}

pub fn build_group(spec: &GroupSpec) -> Result<GroupData> {
    spec.validate()?;
    let r = spec.semisimple_rank();
    let mut cartan = vec![vec![0i64; r]; r];
    let mut offset = 0;
    for &(t, n) in &spec.factors {
        let block = t.cartan(n);
        for i in 0..n {
            for j in 0..n {
                cartan[offset + i][offset + j] = block[i][j];
            }
        }
        offset += n;
    }
    let cartan_q: Matrix = cartan.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
    let z = spec.central_rank;

    let mut lattice_basis = Vec::with_capacity(r + z);
    for j in 0..r {
        let pairings = match spec.isogeny {
            Isogeny::Sc => (0..r).map(|i| cartan_q[i][j].clone()).collect(),
            Isogeny::Ad => (0..r).map(|i| int((i == j) as i64)).collect(),
        };
        lattice_basis.push(Coweight::new(pairings, vec![Rational::zero(); z]));
    }
    for k in 0..z {
        let mut c = Coweight::zero(r, z);
        c.central[k] = int(1);
        lattice_basis.push(c);
    }

    let roots = generate_roots(&cartan);
    let g = GroupData {
        spec: spec.clone(),
        cartan,
        cartan_q,
        lattice_basis,
        roots,
    };
    g.check_cartan()?;
    Ok(g)
}

/// Positive roots by the string algorithm, then their negatives.
fn generate_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let r = cartan.len();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut positive: Vec<Root> = Vec::new();
    let mut layer: Vec<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    while !layer.is_empty() {
        for root in &layer {
            known.insert(root.coefs.clone());
        }
        let mut next: Vec<Root> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for beta in &layer {
            for i in 0..r {
                // Length of the i-string below beta.
                let mut p = 0;
                let mut down = beta.coefs.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !known.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                // <beta, coroot_i> = sum_k coef_k <root_k, coroot_i> = sum_k coef_k A[k][i]
                let pairing: i64 = (0..r).map(|k| beta.coefs[k] * cartan[k][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.coefs.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(Root { coefs: up });
                    }
                }
            }
        }
        positive.extend(layer);
        layer = next;
    }
    positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coefs.cmp(&a.coefs)));
    let negatives: Vec<Root> = positive.iter().map(Root::negated).collect();
    positive.into_iter().chain(negatives).collect()
}

impl GroupData {
    pub fn from_spec_str(text: &str) -> Result<GroupData> {
        build_group(&parse_group_spec(text)?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Semisimple rank `|Γ_G|`.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.spec.central_rank
    }

    pub fn dimension(&self) -> usize {
        self.rank() + self.central_rank()
    }

    pub fn gamma(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> &Rational {
        &self.cartan_q[i][j]
    }

    pub fn lattice_basis(&self) -> &[Coweight] {
        &self.lattice_basis
    }

    /// The principal submatrix of the Cartan matrix on `nodes`.
    pub fn cartan_block(&self, rows: NodeSet, cols: NodeSet) -> Matrix {
        rows.iter()
            .map(|i| cols.iter().map(|j| self.cartan_q[i][j].clone()).collect())
            .collect()
    }

    pub fn zero(&self) -> Coweight {
        Coweight::zero(self.rank(), self.central_rank())
    }

    /// Validates dimensions against this group.
    pub fn coweight(&self, pairings: Vec<Rational>, central: Vec<Rational>) -> Result<Coweight> {
        let c = Coweight::new(pairings, central);
        self.check(&c)?;
        Ok(c)
    }

    pub fn parse_coweight(&self, text: &str) -> Result<Coweight> {
        let c = Coweight::parse(text)?;
        self.check(&c)?;
        Ok(c)
    }

    pub fn check(&self, c: &Coweight) -> Result<()> {
        if c.pairings.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: c.pairings.len(),
            });
        }
        if c.central.len() != self.central_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.central_rank(),
                found: c.central.len(),
            });
        }
        Ok(())
    }

    /// The simple coroot `α_j`: column `j` of the Cartan matrix.
    pub fn simple_coroot(&self, j: usize) -> Coweight {
        Coweight::new(
            (0..self.rank()).map(|i| self.cartan_q[i][j].clone()).collect(),
            vec![Rational::zero(); self.central_rank()],
        )
    }

    pub fn fundamental_coweight(&self, j: usize) -> Coweight {
        let mut c = self.zero();
        c.pairings[j] = int(1);
        c
    }

    /// The coweight pairing to 1 with every simple root.
    pub fn rho(&self) -> Coweight {
        Coweight::new(vec![int(1); self.rank()], vec![Rational::zero(); self.central_rank()])
    }

    /// `λ + Σ c_j α_j` over `nodes` (coefficients listed in node order).
    pub fn add_coroots(&self, lam: &Coweight, nodes: NodeSet, coefs: &[Rational]) -> Coweight {
        let mut out = lam.clone();
        for (j, c) in nodes.iter().zip(coefs) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.rank() {
                out.pairings[i] += c * &self.cartan_q[i][j];
            }
        }
        out
    }

    /// `<λ, root>`.
    pub fn pair_root(&self, lam: &Coweight, root: &Root) -> Rational {
        root.coefs
            .iter()
            .zip(&lam.pairings)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, x)| int(c) * x)
            .sum()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// Coordinates of `λ` in the lattice basis (rational in general).
    pub fn lattice_coordinates(&self, lam: &Coweight) -> Vec<Rational> {
        let r = self.rank();
        let mut coords = match self.spec.isogeny {
            Isogeny::Sc => linalg::solve(&self.cartan_q, &lam.pairings).expect("Cartan matrix is invertible"),
            Isogeny::Ad => lam.pairings.clone(),
        };
        debug_assert_eq!(coords.len(), r);
        coords.extend(lam.central.iter().cloned());
        coords
    }

    pub fn is_integral(&self, lam: &Coweight) -> bool {
        self.lattice_coordinates(lam).iter().all(|q| q.is_integer())
    }

    fn check_cartan(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            if self.cartan[i][i] != 2 {
                return Err(Error::Invariant(format!("Cartan diagonal at {i} is not 2")));
            }
            for j in 0..r {
                if i != j {
                    let (a, b) = (self.cartan[i][j], self.cartan[j][i]);
                    if a > 0 || (a == 0) != (b == 0) {
                        return Err(Error::Invariant(format!("bad Cartan entries at ({i},{j})")));
                    }
                }
            }
        }
        if linalg::determinant(&self.cartan_q).is_zero() {
            return Err(Error::Invariant("Cartan matrix is singular".into()));
        }
        Ok(())
    }
}

/// All roots of `g`, closed under negation.
pub fn enumerate_roots(g: &GroupData) -> Vec<Root> {
    g.roots().to_vec()
}

/// Roots of the Levi subsystem on `gamma_m`: those supported on `gamma_m`.
pub fn levi_roots(g: &GroupData, gamma_m: NodeSet) -> Vec<Root> {
    g.roots()
        .iter()
        .filter(|r| r.support().is_subset(gamma_m))
        .cloned()
        .collect()
}

/// `true` when every entry is `>= 0`.
pub fn nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
