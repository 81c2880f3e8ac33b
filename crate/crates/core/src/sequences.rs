use crate::error::{Error, Result};

/// Directive sequence (d_0, d_1, ...) for standard Sturmian words, with an
/// optional block repeated indefinitely beyond the listed entries so that
/// sequences like 1,1,1,... are finitely expressible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectiveSequence {
    head: Vec<u32>,
    tail: Option<Vec<u32>>,
}

impl DirectiveSequence {
    pub fn new(head: Vec<u32>, tail: Option<Vec<u32>>) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::BadDirective);
        }
        if head.iter().skip(1).any(|&d| d == 0) {
            return Err(Error::BadDirective);
        }
        if let Some(t) = &tail {
            // Tail entries recur at indices > 0, so all must be positive.
            if t.is_empty() || t.iter().any(|&d| d == 0) {
                return Err(Error::BadDirective);
            }
        }
        Ok(DirectiveSequence { head, tail })
    }

    /// Finite sequence without a repeating tail.
    pub fn finite(head: Vec<u32>) -> Result<Self> {
        Self::new(head, None)
    }

    pub fn entry(&self, i: usize) -> Option<u32> {
        if i < self.head.len() {
            return Some(self.head[i]);
        }
        let tail = self.tail.as_ref()?;
        Some(tail[(i - self.head.len()) % tail.len()])
    }

    /// Number of entries listed before the repeating tail (if any).
    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    /// The sequence with a leading zero entry dropped, for the b-starting
    /// symmetry of characteristic Sturmian words.
    pub fn drop_leading_zero(&self) -> Option<DirectiveSequence> {
        if self.head.first() != Some(&0) {
            return None;
        }
        let mut head = self.head[1..].to_vec();
        if head.is_empty() {
            head.push(self.tail.as_ref()?[0]);
            let mut tail = self.tail.clone().unwrap();
            tail.rotate_left(1);
            return Some(DirectiveSequence {
                head,
                tail: Some(tail),
            });
        }
        Some(DirectiveSequence {
            head,
            tail: self.tail.clone(),
        })
    }
}

impl std::fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let head: Vec<String> = self.head.iter().map(u32::to_string).collect();
        write!(f, "{}", head.join(","))?;
        if let Some(t) = &self.tail {
            let t: Vec<String> = t.iter().map(u32::to_string).collect();
            write!(f, ",({})", t.join(","))?;
        }
        Ok(())
    }
}

/// Finite or eventually-repeating sequence of positive integers, with an
/// optional strictness requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSequence {
    head: Vec<u32>,
    tail: Option<Vec<u32>>,
    strict: bool,
}

impl IntSequence {
    pub fn new(head: Vec<u32>, tail: Option<Vec<u32>>, strict: bool) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::BadSequence("no entries".into()));
        }
        if head.iter().chain(tail.iter().flatten()).any(|&v| v == 0) {
            return Err(Error::BadSequence("entries must be positive".into()));
        }
        let seq = IntSequence { head, tail, strict };
        if strict {
            // A repeating tail can never be strictly increasing.
            if seq.tail.is_some() {
                return Err(Error::BadSequence(
                    "strictly increasing sequence cannot repeat a tail".into(),
                ));
            }
            if seq.head.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::BadSequence("entries must strictly increase".into()));
            }
        }
        Ok(seq)
    }

    pub fn strictly_increasing(head: Vec<u32>) -> Result<Self> {
        Self::new(head, None, true)
    }

    pub fn entry(&self, i: usize) -> Option<u32> {
        if i < self.head.len() {
            return Some(self.head[i]);
        }
        let tail = self.tail.as_ref()?;
        Some(tail[(i - self.head.len()) % tail.len()])
    }

    pub fn head(&self) -> &[u32] {
        &self.head
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directive_tail_repeats() {
        let d = DirectiveSequence::new(vec![6, 2], Some(vec![1])).unwrap();
        assert_eq!(d.entry(0), Some(6));
        assert_eq!(d.entry(1), Some(2));
        assert_eq!(d.entry(2), Some(1));
        assert_eq!(d.entry(99), Some(1));
        assert_eq!(d.to_string(), "6,2,(1)");
    }

    #[test]
    fn directive_allows_leading_zero_only() {
        assert!(DirectiveSequence::finite(vec![0, 2, 1]).is_ok());
        assert_eq!(
            DirectiveSequence::finite(vec![1, 0]),
            Err(Error::BadDirective)
        );
        assert_eq!(
            DirectiveSequence::new(vec![1], Some(vec![2, 0])),
            Err(Error::BadDirective)
        );
    }

    #[test]
    fn finite_directive_exhausts() {
        let d = DirectiveSequence::finite(vec![1, 2]).unwrap();
        assert_eq!(d.entry(2), None);
    }

    #[test]
    fn drop_leading_zero_shifts() {
        let d = DirectiveSequence::new(vec![0, 3], Some(vec![2])).unwrap();
        let e = d.drop_leading_zero().unwrap();
        assert_eq!(e.entry(0), Some(3));
        assert_eq!(e.entry(1), Some(2));
        assert!(DirectiveSequence::finite(vec![1, 1])
            .unwrap()
            .drop_leading_zero()
            .is_none());
    }

    #[test]
    fn int_sequence_strictness() {
        assert!(IntSequence::strictly_increasing(vec![2, 3, 4]).is_ok());
        assert!(IntSequence::strictly_increasing(vec![2, 2]).is_err());
        assert!(IntSequence::new(vec![2, 2], None, false).is_ok());
        assert!(IntSequence::new(vec![1, 0], None, false).is_err());
    }
}
