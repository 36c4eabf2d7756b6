//! The printable byte alphabet used by GPT-2 style vocab files.

use std::sync::OnceLock;

struct Alphabet {
    to_char: [char; 256],
    order: Vec<u8>,
}

fn alphabet() -> &'static Alphabet {
    static A: OnceLock<Alphabet> = OnceLock::new();
    A.get_or_init(|| {
        let printable = |b: u8| matches!(b, b'!'..=b'~' | 0xA1..=0xAC | 0xAE..=0xFF);
        let mut to_char = ['\0'; 256];
        let mut order: Vec<u8> = (0..=255u8).filter(|&b| printable(b)).collect();
        for &b in &order {
            to_char[b as usize] = char::from(b);
        }
        let mut shifted = 0u32;
        for b in 0..=255u8 {
            if !printable(b) {
                to_char[b as usize] = char::from_u32(256 + shifted).unwrap();
                shifted += 1;
                order.push(b);
            }
        }
        Alphabet { to_char, order }
    })
}

pub fn byte_char(b: u8) -> char {
    alphabet().to_char[b as usize]
}

pub fn char_byte(c: char) -> Option<u8> {
    let c = c as u32;
    match c {
        0..=255 if byte_char(c as u8) as u32 == c => Some(c as u8),
        256..=323 => alphabet()
            .to_char
            .iter()
            .position(|&x| x as u32 == c)
            .map(|i| i as u8),
        _ => None,
    }
}

/// Bytes in the order GPT-2 assigns their base ids.
pub fn base_order() -> &'static [u8] {
    &alphabet().order
}

pub fn encode_bytes(text: &str) -> String {
    text.bytes().map(byte_char).collect()
}

/// Inverse of [`encode_bytes`]; `None` if a char is outside the alphabet.
pub fn decode_symbols(symbols: &str) -> Option<Vec<u8>> {
    symbols.chars().map(char_byte).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for b in 0..=255u8 {
            let c = byte_char(b);
            assert!(seen.insert(c));
            assert_eq!(char_byte(c), Some(b));
        }
        assert_eq!(byte_char(b' '), 'Ġ');
        assert_eq!(byte_char(b'\n'), 'Ċ');
        assert_eq!(base_order()[0], b'!');
        assert_eq!(base_order().len(), 256);
    }

    #[test]
    fn round_trip() {
        let s = "déf f(x):\n\treturn x";
        assert_eq!(decode_symbols(&encode_bytes(s)).unwrap(), s.as_bytes());
    }
}
