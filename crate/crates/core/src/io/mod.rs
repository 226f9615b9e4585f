//! Reading collections, writing and reading results, inversion.

mod fasta;
mod format;
mod invert;
mod rle;

pub use fasta::{normalize, read_fasta, read_fasta_from, FastaOptions};
pub use format::{
    read_ebwt, read_index, read_outputs, read_parse, read_rle, read_samples, with_ext, write_ebwt,
    write_index, write_outputs, write_parse, write_rle, write_samples, OutputOptions, ParseDump,
};
pub use invert::invert_ebwt;
pub use rle::{run_length_encode, RleEbwt};
