//! Engines for a word-map laboratory.
//!
//! A word `w` in the free group on `d` generators induces an evaluation map
//! `G^d -> G` on any group `G`. This crate computes what those maps do:
//!
//! * [`words`]: reduced free-group words, a small parser, and the classic
//!   word families (powers, commutators, Engel and Thom sequences).
//! * [`fingroups`]: full enumeration of finite matrix groups over prime
//!   fields and of permutation groups, with conjugacy-class tables.
//! * [`imaging`]: images, fibers, widths, chirality, and Waring-type
//!   coverage of word maps on finite groups, with class pruning.
//! * [`symbolic`]: exact rational Laurent polynomials, the trace
//!   polynomial of a word against a generic SL2 matrix, and the Magnus
//!   embedding used to locate words in the derived series.
//! * [`compact`]: floating-point experiments on SU(n) (Haar sampling,
//!   length decay of Thom's word sequence, stochastic word-equation
//!   solving, rank-metric density) and root-existence decisions in
//!   SL(2,R) and SL(2,C).
//! * [`liebracket`]: image and additive width of the matrix Lie bracket
//!   over small prime fields.
//!
//! Data-parallel loops run on rayon when the default `parallel` feature is
//! enabled and degrade to plain sequential iteration without it; results
//! are identical either way.

pub mod compact;
pub mod fingroups;
pub mod imaging;
pub mod liebracket;
pub mod symbolic;
pub mod words;

pub(crate) mod par;

pub use par::thread_count;
