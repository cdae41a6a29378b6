use num_bigint::BigInt;

use super::HeisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    D1,
    D2,
    D3,
    G,
}

pub type Word = Vec<(Generator, BigInt)>;

/// Parses whitespace-separated tokens `d1|d2|d3|g`, each with an optional `^<int>`.
pub fn parse_word(text: &str) -> Result<Word, HeisError> {
    text.split_whitespace()
        .map(|tok| {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: BigInt = e.parse().map_err(|_| HeisError::BadWord(format!("bad exponent in {tok:?}")))?;
                    (n, e)
                }
                None => (tok, BigInt::from(1)),
            };
            let g = match name {
                "d1" => Generator::D1,
                "d2" => Generator::D2,
                "d3" => Generator::D3,
                "g" => Generator::G,
                _ => return Err(HeisError::BadWord(format!("unknown generator {name:?}"))),
            };
            Ok((g, exp))
        })
        .collect()
}
