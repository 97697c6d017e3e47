//! The worked example posets shipped in `corpus/`.

use crate::poset::text::parse_poset;
use crate::poset::FinitePoset;

fn load(src: &str) -> FinitePoset {
    parse_poset(src).expect("corpus poset parses").poset
}

pub const FIG1: &str = include_str!("../../../corpus/fig1.poset");
pub const FIG2: &str = include_str!("../../../corpus/fig2.poset");
pub const FIG3: &str = include_str!("../../../corpus/fig3.poset");
pub const FIG4: &str = include_str!("../../../corpus/fig4.poset");
pub const FIG5: &str = include_str!("../../../corpus/fig5.poset");
pub const FIG6: &str = include_str!("../../../corpus/fig6.poset");
pub const FIG7: &str = include_str!("../../../corpus/fig7.poset");
pub const YOKED_EXAMPLE: &str = include_str!("../../../corpus/yokedexam.sum");

/// Sectionally pseudocomplemented but not strongly so.
pub fn fig1() -> FinitePoset {
    load(FIG1)
}

/// N5.
pub fn fig2() -> FinitePoset {
    load(FIG2)
}

/// Strongly sectionally pseudocomplemented non-lattice.
pub fn fig3() -> FinitePoset {
    load(FIG3)
}

pub fn fig4() -> FinitePoset {
    load(FIG4)
}

/// Three atoms under a top.
pub fn fig5() -> FinitePoset {
    load(FIG5)
}

/// M3, the completion of [`fig5`].
pub fn fig6() -> FinitePoset {
    load(FIG6)
}

/// The completion of [`fig3`].
pub fn fig7() -> FinitePoset {
    load(FIG7)
}
