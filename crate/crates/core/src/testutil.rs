//! Fixtures shared by unit tests.

pub(crate) const PETERSEN: &str = "\
0: 1 4 5
1: 0 2 6
2: 1 3 7
3: 2 4 8
4: 3 0 9
5: 0 7 8
6: 1 8 9
7: 2 9 5
8: 3 5 6
9: 4 6 7
";
