//! Worked applications of the growth bound: periodicity-forcing families,
//! nonrepetitive colourings, size-set tables, incompressible words and
//! density conditions.

pub mod aperiodic;
pub mod kolmogorov;
pub mod nonrepetitive;
pub mod pavlov;
pub mod random;
pub mod tables;
pub mod theorem8;

pub use aperiodic::{aperiodic_check_eq7, aperiodic_min_c, eq7_scan, eq7_threshold, AperiodicQuery, Eq7Check};
pub use kolmogorov::{kolmogorov_constant, kolmogorov_grid, KolmogorovConstant, KolmogorovQuery};
pub use nonrepetitive::{lemma5_chain, nonrepetitive_min_alphabet, nonrepetitive_paper_bound, NonrepetitiveQuery};
pub use pavlov::{compare_pavlov, PavlovComparison};
pub use tables::{paper_tables, section_table, Section, TableRow};
pub use theorem8::{theorem8_bound, Theorem8Case, Theorem8Outcome};
