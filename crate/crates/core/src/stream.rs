//! Lazy, memoized, immutable signed-digit streams.
//!
//! A stream `d1 d2 d3 ...` denotes the real `sum d_i 2^-i` in `[-1, 1]`.
//! Every cell is evaluated at most once; later demands return the cached
//! digit and tail. Streams are cheap to clone (an `Arc` bump) and can be
//! shared between threads.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::digit::Digit;
use crate::error::StreamError;

type Thunk = Box<dyn FnOnce() -> Result<SdStream, StreamError> + Send>;
type CellResult = Result<(Digit, SdStream), StreamError>;

#[derive(Clone)]
pub struct SdStream {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Constant(Digit),
    Node(Arc<Node>),
}

struct Node {
    cell: OnceLock<CellResult>,
    thunk: Mutex<Option<Thunk>>,
}

impl Node {
    fn force(&self) -> &CellResult {
        self.cell.get_or_init(|| {
            let thunk = self
                .thunk
                .lock()
                .unwrap_or_else(|e| e.into_inner())
                .take()
                .expect("stream cell re-entered while being evaluated");
            thunk().and_then(|s| s.uncons())
        })
    }
}

impl Drop for Node {
    // Unlink evaluated tails iteratively; long forced prefixes would
    // otherwise overflow the stack through recursive Arc drops.
    fn drop(&mut self) {
        let mut next = self.cell.take();
        while let Some(Ok((_, tail))) = next {
            next = match tail.repr {
                Repr::Node(arc) => match Arc::try_unwrap(arc) {
                    Ok(mut node) => node.cell.take(),
                    Err(_) => None,
                },
                Repr::Constant(_) => None,
            };
        }
    }
}

impl SdStream {
    /// The stream `d d d ...`, denoting `d`.
    pub fn constant(d: Digit) -> SdStream {
        SdStream {
            repr: Repr::Constant(d),
        }
    }

    pub fn zeros() -> SdStream {
        SdStream::constant(Digit::Zero)
    }

    /// Prepend a digit: denotes `(d + val(tail)) / 2`.
    pub fn cons(d: Digit, tail: SdStream) -> SdStream {
        if let Repr::Constant(c) = tail.repr {
            if c == d {
                return tail;
            }
        }
        SdStream {
            repr: Repr::Node(Arc::new(Node {
                cell: OnceLock::from(Ok((d, tail))),
                thunk: Mutex::new(None),
            })),
        }
    }

    /// Prepend a finite list of digits, the first element ending up first.
    pub fn with_prefix(digits: &[Digit], tail: SdStream) -> SdStream {
        digits
            .iter()
            .rev()
            .fold(tail, |acc, &d| SdStream::cons(d, acc))
    }

    /// A stream whose first cell is produced on first demand by evaluating
    /// `f` and taking the first cell of the stream it returns.
    pub fn defer<F>(f: F) -> SdStream
    where
        F: FnOnce() -> Result<SdStream, StreamError> + Send + 'static,
    {
        SdStream {
            repr: Repr::Node(Arc::new(Node {
                cell: OnceLock::new(),
                thunk: Mutex::new(Some(Box::new(f))),
            })),
        }
    }

    /// Split into head digit and tail.
    pub fn uncons(&self) -> Result<(Digit, SdStream), StreamError> {
        match &self.repr {
            Repr::Constant(d) => Ok((*d, self.clone())),
            Repr::Node(node) => node.force().clone(),
        }
    }

    pub fn head(&self) -> Result<Digit, StreamError> {
        match &self.repr {
            Repr::Constant(d) => Ok(*d),
            Repr::Node(node) => match node.force() {
                Ok((d, _)) => Ok(*d),
                Err(e) => Err(e.clone()),
            },
        }
    }

    pub fn tail(&self) -> Result<SdStream, StreamError> {
        self.uncons().map(|(_, t)| t)
    }

    /// `Some(d)` if this stream is known, without forcing anything, to be `d d d ...`.
    pub fn as_constant(&self) -> Option<Digit> {
        match self.repr {
            Repr::Constant(d) => Some(d),
            Repr::Node(_) => None,
        }
    }

    /// The first `n` digits. Forces exactly `n` cells.
    pub fn prefix(&self, n: usize) -> Result<Vec<Digit>, StreamError> {
        self.digits().take(n).collect()
    }

    /// Drop the first `n` digits.
    pub fn skip(&self, n: usize) -> Result<SdStream, StreamError> {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.tail()?;
        }
        Ok(s)
    }

    /// Iterator over the digits. Yields at most one error, then stops.
    pub fn digits(&self) -> Digits {
        Digits {
            rest: Some(self.clone()),
        }
    }
}

impl fmt::Debug for SdStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Constant(d) => write!(f, "SdStream(const {d})"),
            Repr::Node(node) => match node.cell.get() {
                Some(Ok((d, _))) => write!(f, "SdStream({d} ..)"),
                Some(Err(e)) => write!(f, "SdStream(error: {e})"),
                None => f.write_str("SdStream(<unevaluated>)"),
            },
        }
    }
}

pub struct Digits {
    rest: Option<SdStream>,
}

impl Iterator for Digits {
    type Item = Result<Digit, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        let s = self.rest.take()?;
        match s.uncons() {
            Ok((d, tail)) => {
                self.rest = Some(tail);
                Some(Ok(d))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    use Digit::{NegOne as M, One as P, Zero as Z};

    #[test]
    fn cons_then_uncons() {
        let z = SdStream::zeros();
        let s = SdStream::cons(P, z.clone());
        let (d, t) = s.uncons().unwrap();
        assert_eq!(d, P);
        assert_eq!(t.prefix(5).unwrap(), z.prefix(5).unwrap());
        assert_eq!(z.uncons().unwrap().0, Z);
    }

    #[test]
    fn constant_prefixes() {
        assert_eq!(SdStream::zeros().prefix(3).unwrap(), vec![Z, Z, Z]);
        assert_eq!(
            SdStream::cons(P, SdStream::constant(M)).prefix(4).unwrap(),
            vec![P, M, M, M]
        );
        assert!(SdStream::constant(P).prefix(0).unwrap().is_empty());
    }

    #[test]
    fn thunk_runs_once() {
        let calls = Arc::new(AtomicUsize::new(0));
        let c = calls.clone();
        let s = SdStream::defer(move || {
            c.fetch_add(1, Ordering::SeqCst);
            Ok(SdStream::cons(M, SdStream::zeros()))
        });
        for _ in 0..5 {
            assert_eq!(s.head().unwrap(), M);
            assert_eq!(s.clone().prefix(3).unwrap(), vec![M, Z, Z]);
        }
        assert_eq!(calls.load(Ordering::SeqCst), 1);
    }

    #[test]
    fn concurrent_forcing_is_consistent() {
        let calls = Arc::new(AtomicUsize::new(0));
        fn counting(calls: Arc<AtomicUsize>, k: u32) -> SdStream {
            SdStream::defer(move || {
                calls.fetch_add(1, Ordering::SeqCst);
                let d = if k % 3 == 0 { P } else { M };
                Ok(SdStream::cons(d, counting(calls, k + 1)))
            })
        }
        let s = counting(calls.clone(), 0);
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let s = s.clone();
                std::thread::spawn(move || s.prefix(200).unwrap())
            })
            .collect();
        let outs: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(calls.load(Ordering::SeqCst), 200);
    }

    #[test]
    fn errors_are_cached_and_stop_iteration() {
        let s = SdStream::cons(
            P,
            SdStream::defer(|| Err(StreamError::SqrtPeelDepth { depth: 3 })),
        );
        assert!(s.prefix(1).is_ok());
        assert_eq!(
            s.prefix(2),
            Err(StreamError::SqrtPeelDepth { depth: 3 })
        );
        assert_eq!(s.digits().count(), 2);
    }

    #[test]
    fn long_forced_chain_drops_without_overflow() {
        fn ones(k: u32) -> SdStream {
            SdStream::defer(move || Ok(SdStream::cons(if k % 2 == 0 { P } else { Z }, ones(k + 1))))
        }
        let s = ones(0);
        assert_eq!(s.prefix(300_000).unwrap().len(), 300_000);
        drop(s);
    }
}
