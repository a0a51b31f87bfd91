/// The 90 base vertex characters, in rank order.
pub const ALPHABET: &[u8; 90] =
    b"123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

/// A vertex name: `index = 90 * (number of '+' prefixes) + rank of the base character`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(pub usize);

fn rank_table() -> &'static [i16; 128] {
    static TABLE: std::sync::OnceLock<[i16; 128]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [-1i16; 128];
        for (i, &c) in ALPHABET.iter().enumerate() {
            t[c as usize] = i as i16;
        }
        t
    })
}

/// Rank of a base character, if it belongs to the alphabet.
pub fn base_rank(c: char) -> Option<usize> {
    if !c.is_ascii() {
        return None;
    }
    let r = rank_table()[c as usize];
    (r >= 0).then_some(r as usize)
}

impl VertexLabel {
    pub fn glyph(self) -> String {
        let mut s = "+".repeat(self.0 / ALPHABET.len());
        s.push(ALPHABET[self.0 % ALPHABET.len()] as char);
        s
    }

    pub fn push_glyph(self, out: &mut String) {
        for _ in 0..self.0 / ALPHABET.len() {
            out.push('+');
        }
        out.push(ALPHABET[self.0 % ALPHABET.len()] as char);
    }

    /// Decode a complete glyph such as `"A"` or `"++~"`.
    pub fn decode(glyph: &str) -> Option<VertexLabel> {
        let prefix = glyph.bytes().take_while(|&b| b == b'+').count();
        let rest = &glyph[prefix..];
        let mut chars = rest.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        Some(VertexLabel(prefix * ALPHABET.len() + base_rank(c)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_ninety_distinct_characters() {
        let mut v = ALPHABET.to_vec();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 90);
        for c in *b"+,.0 " {
            assert!(!ALPHABET.contains(&c));
        }
    }

    #[test]
    fn codec_round_trips_ten_thousand_indices() {
        for i in 0..10_000 {
            let g = VertexLabel(i).glyph();
            assert_eq!(VertexLabel::decode(&g), Some(VertexLabel(i)), "{g}");
        }
        assert_eq!(VertexLabel(90).glyph(), "+1");
        assert_eq!(VertexLabel(89).glyph(), "~");
        assert_eq!(VertexLabel::decode("0"), None);
        assert_eq!(VertexLabel::decode("AB"), None);
    }
}
