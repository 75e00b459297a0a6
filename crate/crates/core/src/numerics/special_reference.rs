// Frozen 50-digit reference values of exp(a)*erfc(x).
const HIGH_PRECISION_CASES: &[(f64, f64, f64)] = &[
    (500.0, 22.0, 227649.44444961284),
    (-500.0, -5.0, 1.4249152813471617e-217),
    (0.0, 0.0, 1.0),
    (700.0, 26.0, 574379127.31938455),
    (-680.0, 3.0, 1.056714806338707e-300),
    (-246.634, 0.2797, 5.3529412123925443e-108),
    (211.308, -2.4647, 1.1771227210385435e+92),
    (50.235, 7.7991, 1.8042026351895142e-6),
    (-602.202, -1.825, 5.832832786534202e-262),
    (-105.673, 23.9398, 3.7885022578818456e-297),
    (-526.677, 2.8134, 1.2814059509045599e-233),
    (178.407, 28.1698, 1.4240621404344631e-269),
    (107.944, 8.8838, 253661157426.62933),
    (666.757, -3.3696, 7.4116594571971176e+289),
    (501.856, 5.1363, 3.3792421987389839e+205),
    (-498.043, -0.8773, 9.0028409764634072e-217),
    (-446.983, 15.356, 1.0774975140952835e-298),
    (194.479, 8.0339, 1.8769226135961459e+55),
    (66.842, -2.8024, 2.1385809592598752e+29),
    (-616.558, 2.2086, 3.0515558154972014e-271),
];
