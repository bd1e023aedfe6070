use std::fmt;

use thiserror::Error;

use super::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {found:?} at position {position} is not one of a, b, c")]
    BadAlphabet { position: usize, found: char },
    #[error("word must start with abc")]
    BadPrefix,
    #[error("proper power: letters {position} and {} are equal", position + 1)]
    ProperPower { position: usize },
    #[error("cyclic power: the last letter is a, like the first")]
    CyclicPower,
    #[error("sign is undefined for a repeated letter")]
    SameLetter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    /// Picks the coordinate of a triple `(i, j, k)` this letter stands for.
    pub fn select(self, (i, j, k): (usize, usize, usize)) -> usize {
        match self {
            Letter::A => i,
            Letter::B => j,
            Letter::C => k,
        }
    }
}

/// `+1` for alphabetically ascending pairs, `-1` for descending ones.
pub fn sign(first: Letter, second: Letter) -> Result<i8, WordError> {
    match first.cmp(&second) {
        std::cmp::Ordering::Less => Ok(1),
        std::cmp::Ordering::Greater => Ok(-1),
        std::cmp::Ordering::Equal => Err(WordError::SameLetter),
    }
}

/// Orientation of the copy holding the second letter of a consecutive pair.
///
/// Tuples of consecutive copies `(x_u^t, x_v^{t+1})` must be incident in
/// copy `t+1` exactly when the triple incidence between roles `u` and `v`
/// holds. The straight copy tests `x_v ∈ y_u`, the dual one `x_u ∈ y_v`;
/// the triple incidences are `x_j ∈ y_i`, `x_i ∈ y_k` and `x_j ∈ y_k`.
pub fn orientation_after(prev: Letter, cur: Letter) -> Result<Orientation, WordError> {
    use Letter::*;
    match (prev, cur) {
        (A, B) | (C, A) | (C, B) => Ok(Orientation::Straight),
        (B, A) | (A, C) | (B, C) => Ok(Orientation::Dual),
        _ => Err(WordError::SameLetter),
    }
}

/// A word `z_1 … z_n` over `{a, b, c}` starting with `abc`, with no two
/// cyclically adjacent letters equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

pub fn validate_word(s: &str) -> Result<Word, WordError> {
    let letters = s
        .chars()
        .enumerate()
        .map(|(pos, c)| {
            Letter::from_char(c).ok_or(WordError::BadAlphabet {
                position: pos + 1,
                found: c,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !letters.starts_with(&[Letter::A, Letter::B, Letter::C]) {
        return Err(WordError::BadPrefix);
    }
    if let Some(pos) = letters.windows(2).position(|w| w[0] == w[1]) {
        return Err(WordError::ProperPower { position: pos + 1 });
    }
    if letters.last() == Some(&Letter::A) {
        return Err(WordError::CyclicPower);
    }
    Ok(Word { letters })
}

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Orientation of every copy; copy 1 looks back at `z_n` cyclically.
    pub fn orientations(&self) -> Vec<Orientation> {
        let n = self.letters.len();
        (0..n)
            .map(|t| {
                orientation_after(self.letters[(t + n - 1) % n], self.letters[t])
                    .expect("validated words have no cyclic repeats")
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientation::{Dual as D, Straight as S};

    #[test]
    fn accepts_and_rejects() {
        assert_eq!(validate_word("abcbcab").unwrap().len(), 7);
        assert_eq!(validate_word("abc").unwrap().to_string(), "abc");
        assert_eq!(
            validate_word("abcc"),
            Err(WordError::ProperPower { position: 3 })
        );
        assert_eq!(validate_word("abcba"), Err(WordError::CyclicPower));
        assert_eq!(validate_word("abca"), Err(WordError::CyclicPower));
        assert_eq!(validate_word("acb"), Err(WordError::BadPrefix));
        assert_eq!(validate_word("ab"), Err(WordError::BadPrefix));
        assert_eq!(
            validate_word("abcd"),
            Err(WordError::BadAlphabet {
                position: 4,
                found: 'd'
            })
        );
    }

    #[test]
    fn sign_table() {
        use Letter::*;
        assert_eq!(sign(A, B), Ok(1));
        assert_eq!(sign(B, C), Ok(1));
        assert_eq!(sign(A, C), Ok(1));
        assert_eq!(sign(B, A), Ok(-1));
        assert_eq!(sign(C, B), Ok(-1));
        assert_eq!(sign(C, A), Ok(-1));
        assert_eq!(sign(A, A), Err(WordError::SameLetter));
    }

    #[test]
    fn orientations() {
        assert_eq!(validate_word("abc").unwrap().orientations(), [S, S, D]);
        assert_eq!(
            validate_word("abcbcab").unwrap().orientations(),
            [D, S, D, S, D, S, S]
        );
    }
}
