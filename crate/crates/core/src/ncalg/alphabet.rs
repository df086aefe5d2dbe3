//! Generator symbols, ordered alphabets, and words.
//!
//! A word is stored as the sequence of positions of its letters in one fixed
//! alphabet; the position *is* the normal-order rank of the symbol. The
//! monomial order used everywhere is graded: total length first, then
//! position-lexicographic. All rewriting left sides are two letters long, so
//! this order is enough to make every preset terminating.

use std::collections::BTreeMap;
use std::fmt;

/// A generator symbol. Indices are 1-based; `primed` marks the second copy
/// in a doubled (coproduct) alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Gen {
    /// quantum-plane coordinate `x^i`
    Coord { i: u8 },
    /// differential `theta^i`
    Theta { i: u8 },
    /// pseudogroup matrix entry `z_i^j`
    ZMat { i: u8, j: u8 },
    /// lower-triangular factor `X_i^j`, `i > j`
    XTri { i: u8, j: u8 },
    /// diagonal lattice generator `z_k` or its inverse
    Lat { k: u8, inv: bool },
    /// upper-triangular factor `Y_i^j`, `i < j`
    YTri { i: u8, j: u8 },
}

impl Gen {
    pub fn lat_sign(&self) -> Option<(usize, i64)> {
        match self {
            Gen::Lat { k, inv } => Some((*k as usize, if *inv { -1 } else { 1 })),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Coord { i } => write!(f, "x{i}"),
            Gen::Theta { i } => write!(f, "th{i}"),
            Gen::ZMat { i, j } => write!(f, "z{i}^{j}"),
            Gen::XTri { i, j } => write!(f, "X{i}^{j}"),
            Gen::Lat { k, inv } => {
                if *inv {
                    write!(f, "z{k}\u{207b}")
                } else {
                    write!(f, "z{k}")
                }
            }
            Gen::YTri { i, j } => write!(f, "Y{i}^{j}"),
        }
    }
}

/// An ordered alphabet: symbol positions define the normal order.
#[derive(Clone, Debug)]
pub struct Alphabet {
    symbols: Vec<Gen>,
    index: BTreeMap<Gen, u16>,
    /// boundary between unprimed and primed copies (== symbols.len() when
    /// the alphabet is not doubled)
    unprimed_len: u16,
}

impl Alphabet {
    pub fn new(symbols: Vec<Gen>) -> Self {
        let index = symbols
            .iter()
            .enumerate()
            .map(|(i, g)| (*g, i as u16))
            .collect();
        let unprimed_len = symbols.len() as u16;
        Alphabet {
            symbols,
            index,
            unprimed_len,
        }
    }

    /// Append a primed copy of every symbol; primed letters sort after all
    /// unprimed ones and commute with them.
    pub fn doubled(&self) -> Alphabet {
        let mut symbols = self.symbols.clone();
        symbols.extend(self.symbols.iter().copied());
        let mut index = BTreeMap::new();
        for (i, g) in self.symbols.iter().enumerate() {
            index.insert(*g, i as u16);
        }
        Alphabet {
            symbols,
            index,
            unprimed_len: self.unprimed_len,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn unprimed_len(&self) -> u16 {
        self.unprimed_len
    }

    pub fn is_primed(&self, pos: u16) -> bool {
        pos >= self.unprimed_len
    }

    /// Position of an unprimed symbol.
    pub fn pos(&self, g: &Gen) -> u16 {
        *self
            .index
            .get(g)
            .unwrap_or_else(|| panic!("symbol {g} not in alphabet"))
    }

    /// Position of the primed copy of a symbol.
    pub fn primed_pos(&self, g: &Gen) -> u16 {
        assert!(
            (self.unprimed_len as usize) < self.symbols.len(),
            "alphabet is not doubled"
        );
        self.pos(g) + self.unprimed_len
    }

    pub fn gen_at(&self, pos: u16) -> &Gen {
        &self.symbols[pos as usize]
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.0.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&p| {
                let g = self.gen_at(p);
                if self.is_primed(p) {
                    format!("{g}'")
                } else {
                    format!("{g}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A word over an alphabet, ordered by (length, then position-lex).
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(p: u16) -> Self {
        Word(vec![p])
    }

    pub fn pair(a: u16, b: u16) -> Self {
        Word(vec![a, b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Replace the two letters at `pos` by the given replacement word.
    pub fn splice2(&self, pos: usize, replacement: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - 2 + replacement.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&replacement.0);
        v.extend_from_slice(&self.0[pos + 2..]);
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}
