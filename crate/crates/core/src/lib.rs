//! Extended Burrows-Wheeler transform of string collections, without end
//! markers.
//!
//! Two constructions give identical results:
//!
//! - [`sais::ebwt`] sorts all conjugates with a cyclic SA-IS;
//! - [`pfp::pfp_ebwt`] parses the collection into phrases first and merges
//!   the sorted phrase suffixes, which is much faster on repetitive input.
//!
//! ```
//! use ebwt::strings::SeqCollection;
//!
//! let coll = SeqCollection::from_seqs(["GTACAACG", "CGGCACACACGT", "C"]).unwrap();
//! let r = ebwt::sais::ebwt(&coll).unwrap();
//! assert_eq!(r.bwt, b"CTCCACAGAACTAAGCCGCGG");
//! assert_eq!(r.index_set, [11, 12, 18]);
//!
//! let back = ebwt::io::invert_ebwt(&r.bwt, &r.index_set).unwrap();
//! assert_eq!(back.len(), 3);
//! ```
//!
//! [`oracle`] holds brute-force versions used by the tests, [`io`] the file
//! formats and inversion. The guide in `book/` explains the algorithms; its
//! code blocks are compiled as doctests of this crate.

pub mod error;
pub mod io;
pub mod merge;
pub mod oracle;
pub mod pfp;
pub mod sais;
pub mod strings;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/omega-order.md")]
    mod omega_order {}
    #[doc = include_str!("../../../book/src/ebwt.md")]
    mod ebwt {}
    #[doc = include_str!("../../../book/src/induced-sorting.md")]
    mod induced_sorting {}
    #[doc = include_str!("../../../book/src/prefix-free-parsing.md")]
    mod prefix_free_parsing {}
    #[doc = include_str!("../../../book/src/merge.md")]
    mod merge {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
