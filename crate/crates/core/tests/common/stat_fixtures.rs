// Pinned reference values produced by tests/fixtures/stat_oracle.py (mpmath,
// 50 digits). Values below the f64 range are stored as 0.0.
#![allow(dead_code)]

pub struct WelchCase {
    pub m1: f64,
    pub v1: f64,
    pub n1: u64,
    pub m2: f64,
    pub v2: f64,
    pub n2: u64,
    pub t: f64,
    pub df: f64,
    pub two_sided: f64,
    pub greater: f64,
    pub less: f64,
}

pub struct Chi2Case {
    pub k1: u64,
    pub n1: u64,
    pub k2: u64,
    pub n2: u64,
    pub statistic: f64,
    pub two_sided: f64,
    pub greater: f64,
    pub less: f64,
}

pub const WELCH_CASES: &[WelchCase] = &[
    WelchCase { m1: 1.0, v1: 4.0, n1: 100, m2: 0.5, v2: 1.0, n2: 50, t: 2.0412414523193151, df: 147.99661016949153, two_sided: 0.043003505060484991, greater: 0.021501752530242495, less: 0.9784982474697575 },
    WelchCase { m1: 0.0, v1: 1.0, n1: 10, m2: 0.0, v2: 1.0, n2: 10, t: 0.0, df: 18.0, two_sided: 1.0, greater: 0.5, less: 0.5 },
    WelchCase { m1: 2.5, v1: 1.3, n1: 12, m2: 1.9, v2: 0.7, n2: 9, t: 1.3908013367152606, df: 18.999230473258946, two_sided: 0.18036191114250139, greater: 0.090180955571250694, less: 0.90981904442874931 },
    WelchCase { m1: 10.0, v1: 25.0, n1: 5, m2: 4.0, v2: 9.0, n2: 7, t: 2.3931721056523969, df: 6.0547302580140735, two_sided: 0.053419854322942424, greater: 0.026709927161471212, less: 0.97329007283852879 },
    WelchCase { m1: 0.31, v1: 0.02, n1: 300, m2: 0.35, v2: 0.03, n2: 5000, t: -4.6923713220346478, df: 355.06987684842184, two_sided: 0.0000038608565344296795, greater: 0.99999806957173279, less: 0.0000019304282672148398 },
    WelchCase { m1: 5.0, v1: 2.0, n1: 3, m2: 5.5, v2: 3.0, n2: 3, t: -0.38729833462074169, df: 3.8461538461538462, two_sided: 0.71900703279127825, greater: 0.64049648360436088, less: 0.35950351639563912 },
    WelchCase { m1: 1.2, v1: 0.5, n1: 40, m2: 1.0, v2: 0.5, n2: 40, t: 1.2649110640673515, df: 78.0, two_sided: 0.20966933072299088, greater: 0.10483466536149544, less: 0.89516533463850456 },
    WelchCase { m1: 100.0, v1: 400.0, n1: 1000, m2: 101.5, v2: 380.0, n2: 200000, t: -2.3660954258166902, df: 1008.5129262778401, two_sided: 0.018165062082499314, greater: 0.99091746895875034, less: 0.0090825310412496572 },
    WelchCase { m1: 3.3, v1: 10.0, n1: 2, m2: 1.1, v2: 0.1, n2: 2, t: 0.97898715087796642, df: 1.01999800019998, two_sided: 0.50419467105574239, greater: 0.2520973355278712, less: 0.7479026644721288 },
    WelchCase { m1: 0.0, v1: 1.0, n1: 1000, m2: 0.2, v2: 1.0, n2: 1000, t: -4.4721359549995796, df: 1998.0, two_sided: 0.0000081788878815300142, greater: 0.99999591055605923, less: 0.0000040894439407650071 },
    WelchCase { m1: 7.0, v1: 49.0, n1: 30, m2: 9.0, v2: 64.0, n2: 25, t: -0.97667552008951794, df: 48.167677717557861, two_sided: 0.33360968690075923, greater: 0.83319515654962039, less: 0.16680484345037961 },
    WelchCase { m1: 0.5, v1: 0.25, n1: 295, m2: 0.55, v2: 0.3, n2: 36000, t: -1.7091735247324894, df: 299.81019140858756, two_sided: 0.088453616171780618, greater: 0.95577319191410969, less: 0.044226808085890309 },
    WelchCase { m1: 1.0, v1: 1.0, n1: 20, m2: -1.0, v2: 1.0, n2: 20, t: 6.3245553203367587, df: 38.0, two_sided: 0.00000020441333373958307, greater: 0.00000010220666686979153, less: 0.99999989779333313 },
    WelchCase { m1: 42.0, v1: 0.0001, n1: 50, m2: 42.001, v2: 0.0002, n2: 80, t: -0.47140452078993303, df: 125.97468862997188, two_sided: 0.63816727182067543, greater: 0.68091636408966229, less: 0.31908363591033771 },
    WelchCase { m1: 2.0, v1: 3.0, n1: 150000, m2: 2.003, v2: 3.1, n2: 9000000, t: -0.66511744260111344, df: 155209.35540703321, two_sided: 0.50597636736228774, greater: 0.74701181631885613, less: 0.25298818368114387 },
    WelchCase { m1: 0.8, v1: 0.9, n1: 6, m2: 0.2, v2: 0.1, n2: 100, t: 1.5440550379649363, df: 5.0668775154264525, two_sided: 0.1824659276683173, greater: 0.091232963834158649, less: 0.90876703616584135 },
    WelchCase { m1: 12.0, v1: 144.0, n1: 11, m2: 11.0, v2: 100.0, n2: 13, t: 0.21935301906227825, df: 19.57309387573725, two_sided: 0.82864636468548733, greater: 0.41432318234274367, less: 0.58567681765725633 },
    WelchCase { m1: 0.0, v1: 2.0, n1: 500, m2: 0.3, v2: 2.0, n2: 500, t: -3.3541019662496844, df: 998.0, two_sided: 0.00082618452154062585, greater: 0.99958690773922969, less: 0.00041309226077031292 },
    WelchCase { m1: 4.4, v1: 1.0, n1: 1234, m2: 4.5, v2: 1.2, n2: 4321, t: -3.0315751338313333, df: 2150.8057019823407, two_sided: 0.0024618439843855049, greater: 0.99876907800780725, less: 0.0012309219921927525 },
    WelchCase { m1: 0.9, v1: 0.01, n1: 8, m2: 0.95, v2: 0.02, n2: 8, t: -0.81649658092772494, df: 12.6, two_sided: 0.42938346454211173, greater: 0.78530826772894413, less: 0.21469173227105587 },
];

pub const CHI2_CASES: &[Chi2Case] = &[
    Chi2Case { k1: 30, n1: 100, k2: 20, n2: 100, statistic: 2.6666666666666667, two_sided: 0.10247043485974943, greater: 0.051235217429874714, less: 0.94876478257012529 },
    Chi2Case { k1: 50, n1: 100, k2: 50, n2: 100, statistic: 0.0, two_sided: 1.0, greater: 0.5, less: 0.5 },
    Chi2Case { k1: 0, n1: 10, k2: 5, n2: 10, statistic: 6.6666666666666667, two_sided: 0.009823274507519248, greater: 0.99508836274624038, less: 0.004911637253759624 },
    Chi2Case { k1: 10, n1: 10, k2: 5, n2: 10, statistic: 6.6666666666666667, two_sided: 0.009823274507519248, greater: 0.004911637253759624, less: 0.99508836274624038 },
    Chi2Case { k1: 212, n1: 295, k2: 24000, n2: 33600, statistic: 0.027220822360580144, two_sided: 0.86895394671315945, greater: 0.43447697335657972, less: 0.56552302664342028 },
    Chi2Case { k1: 150, n1: 295, k2: 25000, n2: 33600, statistic: 84.771586582316383, two_sided: 0.000000000000000000033490267648009064, greater: 1.0, less: 0.000000000000000000016745133824004532 },
    Chi2Case { k1: 1, n1: 3, k2: 2, n2: 3, statistic: 0.66666666666666667, two_sided: 0.41421617824252512, greater: 0.79289191087873744, less: 0.20710808912126256 },
    Chi2Case { k1: 33, n1: 80, k2: 40, n2: 80, statistic: 1.2344512675169265, two_sided: 0.2665431158242963, greater: 0.86672844208785185, less: 0.13327155791214815 },
    Chi2Case { k1: 400, n1: 1000, k2: 430000, n2: 1000000, statistic: 3.6683651331605549, two_sided: 0.05545455363131485, greater: 0.97227272318434258, less: 0.027727276815657425 },
    Chi2Case { k1: 460, n1: 1000, k2: 430000, n2: 1000000, statistic: 3.6682395397016314, two_sided: 0.055458732731617239, greater: 0.02772936636580862, less: 0.97227063363419138 },
    Chi2Case { k1: 7, n1: 25, k2: 9, n2: 21, statistic: 1.1105714285714286, two_sided: 0.29195776638625622, greater: 0.85402111680687189, less: 0.14597888319312811 },
    Chi2Case { k1: 2000, n1: 5278, k2: 3000000, n2: 3600000, statistic: 7810.2113168222938, two_sided: 0.0, greater: 1.0, less: 0.0 },
    Chi2Case { k1: 120, n1: 250, k2: 118, n2: 250, statistic: 0.032073898261594714, two_sided: 0.85786556481217995, greater: 0.42893278240608997, less: 0.57106721759391003 },
    Chi2Case { k1: 5, n1: 500, k2: 12, n2: 500, statistic: 2.9322003470767758, two_sided: 0.086829077812637516, greater: 0.95658546109368124, less: 0.043414538906318758 },
    Chi2Case { k1: 99, n1: 100, k2: 90, n2: 100, statistic: 7.7922077922077922, two_sided: 0.0052472037391156424, greater: 0.0026236018695578212, less: 0.99737639813044218 },
    Chi2Case { k1: 3, n1: 7, k2: 1, n2: 9, statistic: 2.1164021164021164, two_sided: 0.14572853320204037, greater: 0.072864266601020187, less: 0.92713573339897981 },
    Chi2Case { k1: 1000, n1: 4000, k2: 1050, n2: 4000, statistic: 1.639680262348842, two_sided: 0.20036934305033887, greater: 0.89981532847483056, less: 0.10018467152516944 },
    Chi2Case { k1: 25, n1: 300, k2: 40, n2: 320, statistic: 2.8644028644028644, two_sided: 0.090559313037052825, greater: 0.95472034348147359, less: 0.045279656518526413 },
    Chi2Case { k1: 600, n1: 1200, k2: 599, n2: 1200, statistic: 0.0016666678240748778, two_sided: 0.96743553383870902, greater: 0.48371776691935451, less: 0.51628223308064549 },
    Chi2Case { k1: 17, n1: 30, k2: 9, n2: 30, statistic: 4.3438914027149321, two_sided: 0.037141940313635813, greater: 0.018570970156817907, less: 0.98142902984318209 },
];

pub const NORMAL_CDF: &[(f64, f64)] = &[
    (-8.0, 0.00000000000000062209605742717841),
    (-5.0, 0.00000028665157187919391),
    (-2.5, 0.0062096653257761352),
    (-1.0, 0.15865525393145705),
    (-0.3, 0.38208857781104737),
    (0.0, 0.5),
    (0.7, 0.75803634777692697),
    (1.0, 0.84134474606854295),
    (1.96, 0.97500210485177956),
    (3.0, 0.99865010196836991),
    (6.0, 0.99999999901341235),
];
pub const STUDENT_T_CDF: &[(f64, f64, f64)] = &[
    (0.5, 1.0, 0.64758361765043327),
    (-2.0, 1.0, 0.14758361765043327),
    (1.5, 2.5, 0.87608177345685187),
    (-0.7, 4.0, 0.26125008279672512),
    (3.0, 7.0, 0.99002893693400373),
    (-4.0, 30.0, 0.00019092281804187842),
    (2.0, 148.0, 0.97633500224216487),
    (0.01, 1000.0, 0.50398835903390636),
    (-3.0, 100000.0, 0.0013502304420323596),
    (2.5, 10000000.0, 0.99379032673171076),
    (-1.5, 300000000.0, 0.066807201795023298),
    (12.0, 5.0, 0.99996455253741419),
];
pub const CHI2_CDF: &[(f64, f64, f64)] = &[
    (0.01, 1.0, 0.079655674554057964),
    (1.0, 1.0, 0.6826894921370859),
    (3.84, 1.0, 0.9499564787512949),
    (10.0, 1.0, 0.99843459774199745),
    (40.0, 1.0, 0.99999999974603714),
    (0.5, 2.0, 0.22119921692859513),
    (4.0, 3.0, 0.73853587005088938),
    (15.0, 10.0, 0.86793814371227939),
    (120.0, 100.0, 0.91559331890630817),
    (2.2, 0.5, 0.94139794547195628),
];
