//! Concrete prefix-free binary codebooks.
//!
//! Text format, one record per line: `label<TAB>codeword<TAB>length`, with
//! `#` starting a comment line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Longest codeword the canonical constructor will assign.
pub const MAX_CODEWORD_LEN: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    labels: Vec<String>,
    codewords: Vec<String>,
    index: HashMap<String, usize>,
    trie: Vec<[Option<u32>; 2]>,
    // symbol index at trie node, if it terminates a codeword
    leaf: Vec<Option<usize>>,
}

impl Codebook {
    /// Validates a label/codeword table: labels distinct and free of tabs and
    /// newlines, codewords nonempty strings over `{0, 1}` with no codeword a
    /// prefix of another.
    pub fn new<S: Into<String>, T: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        codewords: impl IntoIterator<Item = T>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let codewords: Vec<String> = codewords.into_iter().map(Into::into).collect();
        if labels.len() != codewords.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                values: codewords.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.contains(['\t', '\n', '\r']) || label.is_empty() {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }

        let mut trie = vec![[None, None]];
        let mut leaf: Vec<Option<usize>> = vec![None];
        for (sym, word) in codewords.iter().enumerate() {
            if word.is_empty() || !word.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::InvalidCodeword(word.clone()));
            }
            let mut node = 0usize;
            for bit in word.bytes().map(|b| (b - b'0') as usize) {
                if let Some(other) = leaf[node] {
                    return Err(Error::NotPrefixFree(codewords[other].clone(), word.clone()));
                }
                node = match trie[node][bit] {
                    Some(next) => next as usize,
                    None => {
                        trie.push([None, None]);
                        leaf.push(None);
                        let next = trie.len() - 1;
                        trie[node][bit] = Some(next as u32);
                        next
                    }
                };
            }
            if let Some(other) = leaf[node] {
                return Err(Error::NotPrefixFree(codewords[other].clone(), word.clone()));
            }
            if trie[node] != [None, None] {
                let longer = codewords[..sym]
                    .iter()
                    .find(|w| w.starts_with(word.as_str()))
                    .cloned()
                    .unwrap_or_default();
                return Err(Error::NotPrefixFree(word.clone(), longer));
            }
            leaf[node] = Some(sym);
        }

        Ok(Codebook {
            labels,
            codewords,
            index,
            trie,
            leaf,
        })
    }

    /// The English vowel codebook with lengths (2, 2, 2, 3, 4, 4).
    pub fn vowels() -> Codebook {
        Codebook::new(
            ["a", "e", "i", "o", "u", "y"],
            ["11", "00", "01", "100", "1010", "1011"],
        )
        .expect("vowel codebook is prefix-free")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn codewords(&self) -> &[String] {
        &self.codewords
    }

    pub fn codeword(&self, label: &str) -> Option<&str> {
        self.index.get(label).map(|&i| self.codewords[i].as_str())
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.codewords.iter().map(|w| w.len() as u32).collect()
    }

    pub fn kraft_sum(&self) -> f64 {
        self.codewords
            .iter()
            .map(|w| (-(w.len() as f64)).exp2())
            .sum()
    }

    pub fn encode<S: AsRef<str>>(&self, message: &[S]) -> Result<String> {
        let mut out = String::new();
        for sym in message {
            let sym = sym.as_ref();
            let &i = self
                .index
                .get(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            out.push_str(&self.codewords[i]);
        }
        Ok(out)
    }

    /// Parses `bits` by walking the code tree; prefix-freeness makes the
    /// parse unique.
    pub fn decode(&self, bits: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let mut node = 0usize;
        let mut start = 0usize;
        for (pos, b) in bits.bytes().enumerate() {
            let bit = match b {
                b'0' => 0,
                b'1' => 1,
                _ => return Err(Error::InvalidCodeword(bits.to_string())),
            };
            node = match self.trie[node][bit] {
                Some(next) => next as usize,
                None => return Err(Error::Unparseable(start)),
            };
            if let Some(sym) = self.leaf[node] {
                out.push(self.labels[sym].clone());
                node = 0;
                start = pos + 1;
            }
        }
        if node != 0 {
            return Err(Error::DanglingPrefix(bits[start..].to_string()));
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# label\tcodeword\tlength\n");
        for (label, word) in self.labels.iter().zip(&self.codewords) {
            let _ = writeln!(out, "{label}\t{word}\t{}", word.len());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Codebook> {
        let mut labels = Vec::new();
        let mut words = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [label, word, len] = fields[..] else {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 tab-separated fields, found {}",
                    n + 1,
                    fields.len()
                )));
            };
            let len: usize = len
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: invalid length {len:?}", n + 1)))?;
            if len != word.len() {
                return Err(Error::Parse(format!(
                    "line {}: codeword {word:?} has length {}, record says {len}",
                    n + 1,
                    word.len()
                )));
            }
            labels.push(label.to_string());
            words.push(word.to_string());
        }
        Codebook::new(labels, words)
    }
}

/// Canonical prefix-free code for integer lengths satisfying Kraft's
/// inequality.
///
/// Symbols are taken in order of (length, original index); each receives the
/// first `l` bits of the binary expansion of the total `Σ 2^(-l)` of the words
/// assigned before it.
pub fn canonical_codebook<S: Into<String>>(
    lengths: &[u32],
    labels: impl IntoIterator<Item = S>,
) -> Result<Codebook> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    if labels.len() != lengths.len() {
        return Err(Error::LengthMismatch {
            labels: labels.len(),
            values: lengths.len(),
        });
    }
    for (label, &l) in labels.iter().zip(lengths) {
        if l == 0 || l > MAX_CODEWORD_LEN {
            return Err(Error::InvalidLength {
                label: label.clone(),
                value: l as f64,
            });
        }
    }
    // exact Kraft check in units of 2^-MAX_CODEWORD_LEN
    let unit = |l: u32| 1u128 << (MAX_CODEWORD_LEN - l);
    let total: u128 = lengths.iter().map(|&l| unit(l)).sum();
    if total > 1u128 << MAX_CODEWORD_LEN {
        let z: f64 = lengths.iter().map(|&l| (-(l as f64)).exp2()).sum();
        return Err(Error::KraftViolated(z));
    }

    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let mut words = vec![String::new(); lengths.len()];
    let mut acc: u128 = 0;
    for i in order {
        let l = lengths[i];
        let prefix = acc >> (MAX_CODEWORD_LEN - l);
        words[i] = format!("{prefix:0width$b}", width = l as usize);
        acc += unit(l);
    }
    Codebook::new(labels, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let book = canonical_codebook(&[1, 2, 2], ["x", "y", "z"]).unwrap();
        assert_eq!(book.codewords(), &["0", "10", "11"]);

        let book = canonical_codebook(&[2, 2, 2, 3, 4, 4], ["a", "e", "i", "o", "u", "y"]).unwrap();
        assert_eq!(book.codewords(), &["00", "01", "10", "110", "1110", "1111"]);
        assert_eq!(book.lengths(), Codebook::vowels().lengths());

        assert!(matches!(
            canonical_codebook(&[1, 1, 1], ["a", "b", "c"]),
            Err(Error::KraftViolated(z)) if z == 1.5
        ));
    }

    #[test]
    fn canonical_respects_original_order_among_ties() {
        let book = canonical_codebook(&[3, 1, 3, 2], ["a", "b", "c", "d"]).unwrap();
        assert_eq!(book.codewords(), &["110", "0", "111", "10"]);
    }

    #[test]
    fn canonical_rejects_bad_lengths() {
        assert!(canonical_codebook(&[0, 1], ["a", "b"]).is_err());
        assert!(canonical_codebook(&[65], ["a"]).is_err());
        assert!(canonical_codebook(&[1], ["a", "b"]).is_err());
    }

    #[test]
    fn vowels_encode_decode() {
        let book = Codebook::vowels();
        assert_eq!(book.kraft_sum(), 1.0);
        assert_eq!(book.encode(&["a", "e"]).unwrap(), "1100");
        assert_eq!(book.encode::<&str>(&[]).unwrap(), "");
        assert_eq!(book.encode(&["u"]).unwrap(), "1010");
        assert_eq!(book.decode("1100").unwrap(), vec!["a", "e"]);
        assert!(book.decode("").unwrap().is_empty());
        assert_eq!(book.decode("10"), Err(Error::DanglingPrefix("10".into())));
        assert_eq!(book.encode(&["b"]), Err(Error::UnknownSymbol("b".into())));
    }

    #[test]
    fn decode_unparseable() {
        // Kraft sum 3/4: "11" leads nowhere
        let book = Codebook::new(["a", "b"], ["0", "10"]).unwrap();
        assert_eq!(book.decode("011"), Err(Error::Unparseable(1)));
        assert!(matches!(book.decode("0x"), Err(Error::InvalidCodeword(_))));
    }

    #[test]
    fn rejects_non_prefix_free() {
        assert!(matches!(
            Codebook::new(["a", "b"], ["1", "10"]),
            Err(Error::NotPrefixFree(..))
        ));
        assert!(matches!(
            Codebook::new(["a", "b"], ["10", "1"]),
            Err(Error::NotPrefixFree(..))
        ));
        assert!(matches!(
            Codebook::new(["a", "b"], ["10", "10"]),
            Err(Error::NotPrefixFree(..))
        ));
        assert!(matches!(
            Codebook::new(["a"], [""]),
            Err(Error::InvalidCodeword(_))
        ));
        assert!(matches!(
            Codebook::new(["a"], ["012"]),
            Err(Error::InvalidCodeword(_))
        ));
        assert!(matches!(
            Codebook::new(["a\tb"], ["0"]),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn text_format() {
        let book = Codebook::vowels();
        let text = book.to_text();
        assert!(text.contains("a\t11\t2\n"));
        assert!(text.contains("u\t1010\t4\n"));
        assert_eq!(Codebook::from_text(&text).unwrap(), book);

        let err = Codebook::from_text("a\t11\t3\n").unwrap_err();
        assert!(matches!(err, Error::Parse(m) if m.contains("line 1")));
        assert!(Codebook::from_text("# only comments\n\n").is_err());
        assert!(Codebook::from_text("a 11 2\n").is_err());
    }
}
