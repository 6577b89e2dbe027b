//! Embedded regression corpus: generator systems, defining equations, and
//! J-representations for the desk-scale levels, used by `x0n verify` and by
//! the acceptance suite.

/// One reference record. Text fields use the crate's expression and
/// polynomial grammars; absent data is an empty slice or None.
pub struct PaperRecord {
    pub n: u32,
    pub genus: u32,
    /// Generator expressions, F_1 first.
    pub generators: &'static [&'static str],
    /// Defining equation F_N(X,Y) (genus >= 1), up to overall sign/scale.
    pub equation: Option<&'static str>,
    /// Genus 0: R_N = num/den in X (factored text allowed).
    pub rn_g0: Option<(&'static str, &'static str)>,
    /// Genus 1: (A, B, C) with R_N = (A + B*Y)/C.
    pub rn_g1: Option<(&'static str, &'static str, &'static str)>,
    /// Genus 2: (A, B, C, D) with R_N = (A + B*Y + C*Y^2)/D (recorded for
    /// completeness; the pipeline does not collapse genus-2 output).
    pub rn_g2: Option<(&'static str, &'static str, &'static str, &'static str)>,
    /// Sample expansions: (generator index, cusp u, cusp D, series text in
    /// q and z = exp(2 pi i / N)).
    pub expansions: &'static [(usize, i64, u32, &'static str)],
    /// Rational points with their j-values; None marks a cusp.
    pub j_values: &'static [(&'static str, &'static str, Option<&'static str>)],
    /// Relation rows over F_1..F_{g+1} (integer-cleared text).
    pub relations: &'static [&'static str],
    /// Cramer data: Delta and U_3..U_{g+1} over (F_1, F_2) as (X, Y).
    pub delta: Option<&'static str>,
    pub u_list: &'static [&'static str],
    /// J-representation coefficients C_0..C_12 over F_1..F_5 (level 52).
    pub c_list: &'static [&'static str],
    /// Factored denominator of the J-representation, univariate in X = F_1.
    pub killer_den: Option<&'static str>,
}

const EMPTY_EXP: &[(usize, i64, u32, &str)] = &[];
const EMPTY_J: &[(&str, &str, Option<&str>)] = &[];
const EMPTY_S: &[&str] = &[];

const fn base(n: u32, genus: u32, generators: &'static [&'static str]) -> PaperRecord {
    PaperRecord {
        n,
        genus,
        generators,
        equation: None,
        rn_g0: None,
        rn_g1: None,
        rn_g2: None,
        expansions: EMPTY_EXP,
        j_values: EMPTY_J,
        relations: EMPTY_S,
        delta: None,
        u_list: EMPTY_S,
        c_list: EMPTY_S,
        killer_den: None,
    }
}

pub fn record(n: u32) -> Option<&'static PaperRecord> {
    RECORDS.iter().find(|r| r.n == n)
}

pub fn all_records() -> &'static [PaperRecord] {
    RECORDS
}

static RECORDS: &[PaperRecord] = &[
    // ----- genus 0 -----
    PaperRecord {
        rn_g0: Some(("(X-3)^3*(X^3-9X^2+3X-3)^3", "(X-1)^3*X^2*(X-9)")),
        killer_den: Some("(X-1)^3*X^2*(X-9)"),
        ..base(6, 0, &["T[1,3,2,3]"])
    },
    PaperRecord {
        rn_g0: Some(("(X^2-3X+9)*(X^2-11X+25)^3", "X-8")),
        killer_den: Some("(X-8)"),
        ..base(7, 0, &["T[2,1,4,1]"])
    },
    PaperRecord {
        rn_g0: Some(("(X^4-16X^2+16)^3", "(X-4)*(X+4)*X^2")),
        killer_den: Some("(X-4)*(X+4)*X^2"),
        ..base(8, 0, &["T[2,1,4,1]"])
    },
    PaperRecord {
        rn_g0: Some(("X^3*(X^3-24)^3", "X^3-27")),
        killer_den: Some("(X-3)*(X^2+3X+9)"),
        ..base(9, 0, &["-3+T[2,1,4,1]"])
    },
    // The published level-10 denominator is (X-1)^2 (X+4) X^5, which is
    // inconsistent with the published numerator: the monic generator has
    // cusp constants 0, -1, 4 (so J * (X+1)^2 (X-4) X^5 is the function
    // with poles only at P), and with that denominator the numerator
    // reproduces exactly as printed. The denominator below is the repaired
    // one; the numerator is verbatim.
    PaperRecord {
        rn_g0: Some(("(X^6-4X^5+16X+16)^3", "(X+1)^2*(X-4)*X^5")),
        killer_den: Some("(X+1)^2*(X-4)*X^5"),
        ..base(10, 0, &["-T[1,2,4,2]"])
    },
    PaperRecord {
        rn_g0: Some((
            "(X^2-3)^3*(X^6-9X^4+3X^2-3)^3",
            "X^4*(X-3)*(X+3)*(X-1)^3*(X+1)^3",
        )),
        killer_den: Some("X^4*(X-3)*(X+3)*(X-1)^3*(X+1)^3"),
        ..base(12, 0, &["-3+T[5,1,2,1]"])
    },
    PaperRecord {
        rn_g0: Some(("(X^2+X+7)*(X^4-X^3+2X^2-9X+3)^3", "X-2")),
        killer_den: Some("(X-2)"),
        ..base(13, 0, &["-5+T[5,1,3,1]"])
    },
    // The level-16 generator is printed with a plus sign, but the cusp
    // constants pinned by the row's own denominator (0, +-2, +-2i) force
    // the monic combination 2 - T/2 (the printed 2 + T/2 lands 4 lower at
    // every cusp after normalization).
    PaperRecord {
        rn_g0: Some(("(X^8-16X^4+16)^3", "X^4*(X-2)*(X+2)*(X^2+4)")),
        killer_den: Some("X^4*(X-2)*(X+2)*(X^2+4)"),
        ..base(16, 0, &["2-1/2*T[6,1,3,1]*[7,1,2,1]"])
    },
    PaperRecord {
        rn_g0: Some((
            "(X^3-2)^3*(X^9-6X^6-12X^3-8)^3",
            "X^9*(X-2)*(X^2+2X+4)*(X+1)^2*(X^2-X+1)^2",
        )),
        killer_den: Some("X^9*(X-2)*(X^2+2X+4)*(X+1)^2*(X^2-X+1)^2"),
        ..base(18, 0, &["-1+T[2,1,7,1]"])
    },
    PaperRecord {
        rn_g0: Some((
            "(X^10+10X^8+35X^6-12X^5+50X^4-60X^3+25X^2-60X+16)^3",
            "(X-1)*(X^4+X^3+6X^2+6X+11)",
        )),
        killer_den: Some("(X-1)*(X^4+X^3+6X^2+6X+11)"),
        ..base(25, 0, &["-4+T[10,2,7,2]"])
    },
    // ----- genus 1 -----
    PaperRecord {
        equation: Some("Y^2-5Y-X^3+7X^2-6X+18"),
        rn_g1: Some((
            "-(11X^6-278X^5+1523X^4-1514X^3+974X^2-11777X+12992)",
            "X^5+13X^4-841X^3+5685X^2-10974X+6049",
            "X-18",
        )),
        killer_den: Some("(X-18)"),
        ..base(11, 1, &["T[2,1,5,1]", "T[2,1,3,1]"])
    },
    PaperRecord {
        equation: Some("Y^2-X^3+YX-6X^2-Y-18X-12"),
        rn_g1: Some((
            "X^14+18X^13+62X^12-416X^11-4665X^10-19750X^9-47712X^8-71184X^7-70977X^6-56762X^5-41850X^4-6672X^3+5593X^2-882X-196",
            "-(7X^12+28X^11-154X^10-1588X^9-5775X^8-11592X^7-14028X^6-10248X^5-4263X^4-980X^3-4410X^2-196X-49)",
            "(X+1)^4*X^2*(X-7)",
        )),
        expansions: &[
            (0, 1, 1, "q^-2+q^-1+2q+2q^2+3q^3+4q^4-2q^5-q^6+q^7-4q^8-2q^9-6q^10-10q^11+8q^12+6q^13-3q^14+10q^15"),
            (0, 1, 2, "-1+8z^2*q^2+8z^3*q^3"),
            (0, 1, 7, "7q+21q^2"),
            (0, 1, 14, "7+56q"),
            (1, 1, 1, "q^-3+q^-2+3q^-1+5+7q+6q^2+5q^3+8q^4+8q^5-q^6-3q^7-16q^8-11q^9+2q^10-26q^11-24q^12+10q^13+9q^14+42q^15"),
            (1, 1, 2, "1+8z*q+8z^3*q^3"),
            (1, 1, 7, "-3-21q"),
            (1, 1, 14, "25+224q"),
        ],
        j_values: &[
            ("7", "25", None),
            ("0", "4", Some("-3375")),
            ("-1", "1", None),
            ("0", "-3", None),
            ("7", "-31", Some("16581380")),
        ],
        killer_den: Some("(X+1)^4*X^2*(X-7)"),
        ..base(14, 1, &["T[5,1,2,1]", "T[4,1,3,1]*[5,1,2,1]"])
    },
    PaperRecord {
        equation: Some("Y^2-X^3-YX+5X^2-Y+3X-6"),
        rn_g1: Some((
            "-8X^14+172X^13-1309X^12+4682X^11-8857X^10+10150X^9-8004X^8+1860X^7+1110X^6+8150X^5-11425X^4+1375X^3+2875X^2-2000X+500",
            "X^13-5X^12-180X^11+1925X^10-7525X^9+13878X^8-11370X^7+330X^6+6075X^5-3775X^4+875X^3+1125X^2-875X+250",
            "(X-10)*X^3*(X-1)^3",
        )),
        killer_den: Some("(X-10)*X^3*(X-1)^3"),
        ..base(15, 1, &["T[7,1,3,1]", "T[2,1,7,1]"])
    },
    PaperRecord {
        equation: Some("Y^2+XY-12Y-X^3-2X^2-7X+50"),
        rn_g1: Some((
            "-8X^9-51X^8+2X^7+1561X^6+9036X^5+18089X^4+3890X^3-39793X^2-37016X-766",
            "X^8+29X^7+12X^6-797X^5-2848X^4-2877X^3+3176X^2+6109X+1291",
            "X-6",
        )),
        killer_den: Some("(X-6)"),
        ..base(17, 1, &["-9+T[5,1,2,1]", "T[2,1,4,1]"])
    },
    PaperRecord {
        equation: Some("Y^2-X^3-3X^2-7X+52+2YX-11Y"),
        rn_g1: Some((
            "X^10-21X^9+49X^8+341X^7-1202X^6-1145X^5+8429X^4-2519X^3-17952X^2+10677X+2036",
            "X^9-6X^8-3X^7+106X^6-182X^5-607X^4+1281X^3+850X^2-1972X+113",
            "X-4",
        )),
        killer_den: Some("(X-4)"),
        ..base(19, 1, &["8+T[7,1,1,2]", "T[2,1,4,1]"])
    },
    PaperRecord {
        equation: Some("Y^2-2XY-10Y-X^3+3X^2+5X+25"),
        rn_g1: Some((
            "(X^6-10X^5+35X^4-60X^3+55X^2-10X+5)^3",
            "0",
            "(X-1)^5*X^2*(X-5)",
        )),
        killer_den: Some("(X-1)^5*X^2*(X-5)"),
        ..base(20, 1, &["1/2*T[6,1,8,1]", "T[9,1,2,1]"])
    },
    PaperRecord {
        equation: Some("Y^2-X^3+5XY+6X^2-10Y-21X+26"),
        rn_g1: Some((
            "-8X^20-108X^19-290X^18+1377X^17+7889X^16+12618X^15+61888X^14+464481X^13+1422577X^12+1263600X^11-3542450X^10-12114423X^9-14689335X^8-3572902X^7+12903306X^6+19284316X^5+13160184X^4+4506178X^3+197870X^2-400970X-38098",
            "X^19+61X^18+804X^17+3677X^16-2665X^15-96660X^14-435876X^13-917535X^12-594000X^11+1758543X^10+5284707X^9+6372696X^8+2782547X^7-2593906X^6-5046093X^5-3771279X^4-1501035X^3-252783X^2+19727X+929",
            "(X+1)^7*(X+2)^2*(X-5)",
        )),
        killer_den: Some("(X+1)^7*(X+2)^2*(X-5)"),
        // The published expression for F_1 omits its constant term: the
        // cusp constants demanded by the denominator (X+1)^7 (X+2)^2 (X-5)
        // sit exactly 1/2 above those of -T[5,1,2,1]/2.
        ..base(21, 1, &["1/2-1/2*T[5,1,2,1]", "T[6,1,9,1]"])
    },
    PaperRecord {
        equation: Some("Y^2+4Y-X^3+3X+4-2X^2"),
        rn_g1: Some((
            "(X^2-3)^3*(X^6-9X^4+3X^2-3)^3",
            "0",
            "X^4*(X-3)*(X+3)*(X-1)^3*(X+1)^3",
        )),
        killer_den: Some("X^4*(X-3)*(X+3)*(X-1)^3*(X+1)^3"),
        ..base(24, 1, &["3-T[9,1,2,1]", "-T[4,1,2,1]"])
    },
    // The published level-32 row is internally inconsistent: its equation
    // block is written for a generator one higher than the one its R_N and
    // denominator blocks use (the printed generator's cusp constants are
    // exactly the denominator's roots). The generator and R_N data are kept
    // verbatim; the equation is the published one shifted back by
    // X -> X + 1. As published: Y^2+2XY-14Y-21X+54-X^3+4X^2.
    PaperRecord {
        equation: Some("Y^2+2XY-12Y-X^3+X^2-16X+36"),
        rn_g1: Some((
            "(X^8-16X^4+16)^3",
            "0",
            "X^4*(X-2)*(X+2)*(X^2+4)",
        )),
        killer_den: Some("X^4*(X-2)*(X+2)*(X^2+4)"),
        ..base(32, 1, &["2-1/4*T[12,2,6,2]*[14,2,4,2]", "T[8,2,13,2]"])
    },
    PaperRecord {
        equation: Some("Y^2+2Y-X^3"),
        rn_g1: Some((
            "(X^3-2)^3*(X^9-6X^6-12X^3-8)^3",
            "0",
            "X^9*(X-2)*(X^2+2X+4)*(X+1)^2*(X^2-X+1)^2",
        )),
        killer_den: Some("X^9*(X-2)*(X^2+2X+4)*(X+1)^2*(X^2-X+1)^2"),
        ..base(36, 1, &["-1+1/2*T[4,2,14,2]", "-1/3*T[6,9,7,9]"])
    },
    PaperRecord {
        equation: Some("Y^2-25Y-3XY-X^3+38X+159"),
        rn_g1: Some((
            "23X^31+1989X^30+47515X^29+425325X^28+517993X^27-18575564X^26-161213955X^25-674629460X^24-1844931540X^23-5058475096X^22-19271899681X^21-67144337491X^20-149815471183X^19-145903004163X^18+184725017930X^17+805084089676X^16+950237564249X^15-207250599904X^14-1869860337996X^13-1778552954157X^12+526953944216X^11+2216883047056X^10+1145927733576X^9-817610262080X^8-1063185458944X^7-103086959808X^6+327504300032X^5+122286424064X^4-30972084736X^3-19391012864X^2-239443968X+438534144",
            "X^30+299X^29+14652X^28+281120X^27+2799090X^26+16541749X^25+63288344X^24+179306368X^23+511650280X^22+1771232319X^21+5509411754X^20+11262306958X^19+9369410141X^18-17331130292X^17-63049874238X^16-68252518528X^15+25007132730X^14+147786037196X^13+128818604824X^12-53364870160X^11-173818848728X^10-79535252304X^9+71127434848X^8+81329280896X^7+3678398976X^6-26727608320X^5-8668975616X^4+2886603776X^3+1485400064X^2-20078592X-35979264",
            "X^7+14X^4+56X^3+70X^2-28X-113",
        )),
        killer_den: Some("X^7+14X^4+56X^3+70X^2-28X-113"),
        ..base(49, 1, &["-6+T[14,4,2,4]*[7,18,3,18]", "T[6,7,21,7]*[21,1,6,1]"])
    },
    // ----- genus 2, published R_N -----
    PaperRecord {
        equation: Some("X^4+2X^3+11X^2-34X-Y^3-10Y^2+(2X^2-10X-41)Y-32"),
        rn_g2: Some((
            "25X^20-180X^19-20X^18-1284X^17-577X^16+18336X^15-28656X^14+24644X^13-4975X^12-71048X^11+57344X^9+344064X^8+1089536X^7+3981312X^6+10518528X^5+36896768X^4+143130624X^3+256901120X^2+310378496X+402653184",
            "X^20-10X^19-9X^18+130X^17-243X^16+5858X^15+6995X^14-25070X^13+44522X^12-14800X^11+4096X^9+4096X^8+98304X^7+983040X^6+1843200X^5+4751360X^4+28934144X^3+54001664X^2+67633152X+113246208",
            "-8X^18+70X^17-100X^16+220X^15+2148X^14-5010X^13+2841X^12+952X^11+12288X^7+61440X^6+40960X^5+458752X^4+3244032X^3+6291456X^2+8912896X+12582912",
            "X^14-2X^13-39X^12-72X^11",
        )),
        ..base(
            22,
            2,
            &[
                "-3+T[8,2,3,2]*[3,1,8,1]",
                "6-T[4,2,10,2]*[10,1,4,1]-T[8,2,3,2]*[3,1,8,1]",
            ],
        )
    },
    PaperRecord {
        equation: Some("X^4+7X^3+27X^2+132X-Y^3+(-8X-6)Y^2+(-9X^2-52X+39)Y+684"),
        rn_g2: Some((
            "73X^8-546X^7-5395X^6-20918X^5-104397X^4-778894X^3-271080X^2-1537730X+68337",
            "10X^7-572X^6+6588X^5+60922X^4-6432X^3+237609X^2-37183X+146317",
            "X^6-506X^5+7017X^4-3420X^3+17834X^2-12608X+2216",
            "X-12",
        )),
        ..base(
            23,
            2,
            &["-9+T[3,2,5,2]*[5,1,3,1]", "4+T[3,2,7,2]*[7,1,3,1]"],
        )
    },
    PaperRecord {
        equation: Some("X^4-7X^3+8X^2-48X-Y^3+(-8X+4)Y^2+(-12X^2-12X-48)Y"),
        rn_g2: Some((
            "102X^23-4274X^22+36660X^21-88128X^20+97312X^19-310368X^18-963392X^17+293376X^16+1023744X^15+294656X^14-9216X^13+258048X^10+5070848X^9+29339648X^8+138493952X^7+511901696X^6+1364721664X^5+2954887168X^4+4991221760X^3+5486149632X^2+3288334336X+805306368",
            "-12X^22-571X^21+36436X^20-84464X^19-234960X^18-646160X^17-526784X^16+841472X^15+1138688X^14+303104X^13+57344X^9+3198976X^8+18411520X^7+58720256X^6+182648832X^5+394002432X^4+401604608X^3+79691776X^2-134217728X-67108864",
            "X^21-775X^20+22904X^19-96752X^18-104512X^17+260144X^16+298752X^15+18688X^14-35840X^13+4096X^8+393216X^7+2600960X^6+9027584X^5+28573696X^4+67895296X^3+92274688X^2+62914560X+16777216",
            "X^13*(X-12)*(X+1)",
        )),
        ..base(
            26,
            2,
            &["2-T[10,2,12,2]*[12,1,10,1]", "4+T[4,2,9,2]*[9,1,4,1]"],
        )
    },
    PaperRecord {
        equation: Some("X^4+288X^3+31097X^2+1491984X+(-5X^2-720X-25920)Y-Y^3+26837568"),
        rn_g2: Some((
            "102X^27+306X^26-8442X^25-25326X^24+206121X^23+618363X^22-2018586X^21-6055758X^20+9733654X^19+29200962X^18-27239996X^17-81719988X^16+48219430X^15+144658290X^14-55782076X^13-167346228X^12+54725846X^11+164177538X^10+17711414X^9+53134242X^8+28987609X^7+86962827X^6+926038X^5+2778114X^4+36358X^3+109074X^2",
            "X^27+3X^26-839X^25-2517X^24+57267X^23+171801X^22-1035053X^21-3105159X^20+6589699X^19+19769097X^18-21809781X^17-65429343X^16+43462314X^15+130386942X^14-55415654X^13-166246962X^12+46472307X^11+139416921X^10-27137621X^9-81412863X^8-605493X^7-1816479X^6-3162117X^5-9486351X^4+2401X^3+7203X^2-343X-1029",
            "-17X^25-51X^24+2681X^23+8043X^22-110979X^21-332937X^20+1095357X^19+3286071X^18-4868011X^17-14604033X^16+12173210X^15+36519630X^14-18835474X^13-56506422X^12+18755674X^11+56267022X^10-9270443X^9-27811329X^8+11672045X^7+35016135X^6+1771693X^5+5315079X^4+197225X^3+591675X^2-49X-147",
            "X^2*(X^2-49)*(X^2-1)^7*(X+3)",
        )),
        ..base(
            28,
            2,
            &[
                "-79+T[12,2,5,2]*[5,1,12,1]",
                "15-T[11,2,13,2]*[13,1,11,1]+2*T[12,2,5,2]*[5,1,12,1]",
            ],
        )
    },
    PaperRecord {
        equation: Some("X^4+7X^3+16X^2-10X+(-4X+2)Y^2-Y^3+144+(4X^2-10X+35)Y"),
        rn_g2: Some((
            "31X^10+9X^9-159X^8+205X^7+9501X^6-50799X^5+165072X^4-324935X^3+440497X^2-350079X+137927",
            "7X^9+104X^8-1134X^7+6377X^6-25276X^5+66921X^4-127602X^3+161922X^2-131261X+49677",
            "X^8-140X^7+1128X^6-4832X^5+13228X^4-24294X^3+29790X^2-22321X+7948",
            "X-6",
        )),
        ..base(
            29,
            2,
            &[
                "3-T[13,2,11,2]*[11,1,13,1]",
                "-4+T[4,2,11,2]*[11,1,4,1]-2*T[13,2,11,2]*[11,1,13,1]",
            ],
        )
    },
    // The level-31 equation row does not fit the printed generators under
    // any exact affine renormalization (the denominator X-8 pins the shift
    // at 20, which forces the Y^2 row to mismatch); it is kept verbatim and
    // surfaces as a reported diff.
    PaperRecord {
        equation: Some("X^4-21X^3+235X^2-3061X+10304-Y^3-(4X+24)Y^2+(4X^2-210X+409)Y"),
        rn_g2: Some((
            "-18X^11+4997X^10-196897X^9+2788515X^8-18906271X^7+72162582X^6-248096148X^5+1325621567X^4-6136101579X^3+16559053779X^2-23236346958X+13294184235",
            "X^10-461X^9-26628X^8+1849583X^7-31107208X^6+241112657X^5-995412091X^4+2185571830X^3-2080251619X^2-266712928X+1365873417",
            "217X^8-37014X^7+1334457X^6-19397444X^5+145182734X^4-615528808X^3+1500491171X^2-1968040952X+1079470840",
            "X-8",
        )),
        ..base(
            31,
            2,
            &[
                "10+T[4,2,9,2]*[9,1,4,1]",
                "-22+T[3,2,5,2]*[5,1,3,1]+T[4,2,9,2]*[9,1,4,1]",
            ],
        )
    },
    // ----- generator lists only (g = 2, 37 <= N <= 50) -----
    base(
        37,
        2,
        &[
            "-1/2*T[6,4,13,4]*[13,1,6,1]",
            "-T[13,2,17,2]*[17,1,13,1]",
            "T[3,2,5,2]*[5,1,3,1]",
        ],
    ),
    base(
        50,
        2,
        // h1 = [10,5,15,5]*[15,1,10,1], h2 = [10,8,24,8]*[24,1,10,1],
        // h3 = [22,7,3,7]*[3,1,22,1], h4 = [10,4,24,4]*[5,1,16,1];
        // F1 = -8/3 + (-h1+h2-h3+2h4)/3, F2 = -2+h1+h3-h4, F3 = 3-h1.
        &[
            "-8/3-1/3*T[10,5,15,5]*[15,1,10,1]+1/3*T[10,8,24,8]*[24,1,10,1]-1/3*T[22,7,3,7]*[3,1,22,1]+2/3*T[10,4,24,4]*[5,1,16,1]",
            "-2+T[10,5,15,5]*[15,1,10,1]+T[22,7,3,7]*[3,1,22,1]-T[10,4,24,4]*[5,1,16,1]",
            "3-T[10,5,15,5]*[15,1,10,1]",
        ],
    ),
    // ----- genus 3 -----
    base(
        30,
        3,
        &[
            "-T[4,2,14,2]*[14,1,4,1]",
            "-T[10,5,9,5]*[9,1,10,1]",
            "-T[4,2,11,2]*[11,1,4,1]",
            "-T[13,2,7,2]*[7,1,13,1]",
        ],
    ),
    base(
        33,
        3,
        &[
            "T[16,2,5,2]*[5,1,16,1]",
            "T[13,2,11,2]*[11,1,13,1]",
            "T[4,2,15,2]*[15,1,4,1]",
            "T[4,2,7,2]*[7,1,4,1]",
        ],
    ),
    base(
        34,
        3,
        &[
            "-T[3,5,14,5]*[14,1,3,1]",
            "T[4,2,16,2]*[16,1,4,1]",
            "-T[4,2,13,2]*[13,1,4,1]",
            "T[6,2,11,2]*[11,1,6,1]",
        ],
    ),
    base(
        35,
        3,
        &[
            "-T[9,2,16,2]*[16,1,9,1]-T[7,2,15,2]*[15,1,7,1]",
            "T[9,2,16,2]*[16,1,9,1]",
            "T[9,2,14,2]*[14,1,9,1]+T[9,2,16,2]*[16,1,9,1]+T[7,2,15,2]*[15,1,7,1]",
            "T[3,2,17,2]*[17,1,3,1]",
        ],
    ),
    base(
        39,
        3,
        // F3 and F4 resolved: with ha = T[18,2,14,2]*[14,1,18,1],
        // hb = T[4,2,9,2]*[9,1,4,1], hc = T[16,2,14,2]*[14,1,16,1],
        // hd = T[15,2,3,2]*[3,1,15,1]:
        // F1 = ha, F3 = hb - ha, F4 = hc + 2 F3 + F1 = hc + 2hb - ha,
        // F2 = -hd - F4 - 3F3 - 3F1 = ha - hd - hc - 5hb.
        &[
            "T[18,2,14,2]*[14,1,18,1]",
            "T[18,2,14,2]*[14,1,18,1]-T[15,2,3,2]*[3,1,15,1]-T[16,2,14,2]*[14,1,16,1]-5*T[4,2,9,2]*[9,1,4,1]",
            "T[4,2,9,2]*[9,1,4,1]-T[18,2,14,2]*[14,1,18,1]",
            "T[16,2,14,2]*[14,1,16,1]+2*T[4,2,9,2]*[9,1,4,1]-T[18,2,14,2]*[14,1,18,1]",
        ],
    ),
    base(
        40,
        3,
        &[
            "1/2*T[17,3,7,3]*[7,1,17,1]",
            "T[6,4,14,4]*[14,1,6,1]",
            "-1/2*T[5,3,19,3]*[19,1,5,1]",
            "-T[2,3,18,3]*[18,1,2,1]",
        ],
    ),
    base(
        41,
        3,
        // F3 = -hc - F1 - F2, F4 = -hd - F3 + 2F2 with
        // F1 = -T[7,2,5,2]*[5,1,7,1], F2 = 1/2*T[3,2,5,2]*[5,1,3,1],
        // hc = T[4,2,9,2]*[9,1,4,1], hd = T[4,2,12,2]*[12,1,4,1].
        &[
            "-T[7,2,5,2]*[5,1,7,1]",
            "1/2*T[3,2,5,2]*[5,1,3,1]",
            "-T[4,2,9,2]*[9,1,4,1]+T[7,2,5,2]*[5,1,7,1]-1/2*T[3,2,5,2]*[5,1,3,1]",
            "-T[4,2,12,2]*[12,1,4,1]+T[4,2,9,2]*[9,1,4,1]-T[7,2,5,2]*[5,1,7,1]+3/2*T[3,2,5,2]*[5,1,3,1]",
        ],
    ),
    base(
        43,
        3,
        &[
            "-1/2*T[3,4,5,4]*[5,1,3,1]",
            "T[12,2,5,2]*[5,1,12,1]",
            "T[7,2,5,2]*[5,1,7,1]",
            "T[4,2,9,2]*[9,1,4,1]",
        ],
    ),
    base(
        45,
        3,
        &[
            "1/3*T[7,8,15,8]*[15,1,7,1]",
            "-1/2*T[6,4,21,4]*[21,1,6,1]",
            "1/3*T[12,3,21,3]",
            "T[6,3,21,3]*[21,1,6,1]",
        ],
    ),
    base(
        48,
        3,
        &[
            "1/4*T[20,4,8,4]",
            "T[11,17,8,17]*[8,1,11,1]",
            "1/2*T[13,5,3,5]*[3,1,13,1]",
            "-T[13,2,6,2]*[6,1,13,1]",
        ],
    ),
    // ----- genus 4 -----
    base(
        38,
        4,
        &[
            "-T[4,2,18,2]*[18,1,4,1]+T[18,1,2,1]*[5,1,5,2]+T[6,2,13,2]*[13,1,6,1]",
            "T[18,1,2,1]",
            "T[4,2,18,2]*[18,1,4,1]",
            "-T[14,4,5,4]",
            "-T[15,2,4,2]",
        ],
    ),
    base(
        44,
        4,
        &[
            "-T[11,4,10,4]*[10,1,11,1]",
            "1/2*T[20,4,2,4]",
            "T[21,1,2,1]",
            "T[17,20,5,20]*[5,1,17,1]",
            "-1/2*T[2,11,20,11]",
        ],
    ),
    base(
        47,
        4,
        &[
            "-T[9,23,2,23]*[2,1,9,1]+T[13,20,2,20]*[2,1,13,1]+T[1,2,5,2]",
            "-T[1,2,5,2]",
            "-T[9,23,2,23]*[2,1,9,1]",
            "T[5,1,2,1]",
            "T[5,1,3,1]",
        ],
    ),
    // ----- genus 5 -----
    base(
        42,
        5,
        &[
            "T[19,2,5,2]*[5,1,19,1]",
            "1/2*T[7,6,14,6]",
            "T[17,11,4,11]*[4,1,17,1]",
            "T[16,2,5,2]*[5,1,16,1]",
            "T[18,3,13,3]*[13,1,18,1]",
            "T[10,4,11,4]*[11,1,10,1]",
        ],
    ),
    // The published level-46 list shows seven expressions for six
    // generator slots; it is kept verbatim and flagged by the verifier.
    base(
        46,
        5,
        &[
            "1/2+T[19,8,3,8]+1/2*T[16,14,1,14]+T[1,18,2,18]*[2,1,20,1]+T[8,3,2,3]*[2,1,8,1]",
            "-3/2*T[1,7,2,7]*[2,1,5,1]",
            "-T[22,1,2,1]",
            "-T[4,2,22,2]*[22,1,4,1]",
            "T[20,2,3,2]*[3,1,20,1]",
            "-T[15,1,8,1]",
            "-T[19,2,4,2]",
        ],
    ),
    PaperRecord {
        equation: Some(
            "729Y^6-8748Y^5+(10368X+8748X^2-3888)Y^4+(-82944X+264384-69984X^2)Y^3+(1038528X^2+15552X^4+1645056+2430144X+177264X^3)Y^2-(709056X^3+3594240X^2+9057024X+62208X^4+9068544)Y+6739136X-14067X^6-406364X^4-729X^7+8537280-111148X^5-516848X^3+1370992X^2",
        ),
        relations: &[
            "(9F1+170)F3+52F5+36F2-9F2^2-21F1^2+4F1+2804",
            "(9F1-38)F4+9F3F1-15F1F2-9F1^2-9F2F3+20-20F3-240F2+26F6+140F1",
            "(9F1-12)F5-9F4F1-6F3F1+24F1F2-9F2F4-26F6+46F1+56F4+27F1^2+168F2-1532-70F3",
            "(9F1-64)F6-42F4F1-42F3F1+48F1F2-9F2F5+282F2+18F5+82F4+42F1^2-568F1+476+82F3",
        ],
        delta: Some(
            "(9828+6318X)Y^2+(-25272X-39312)Y+136608X+729X^4+12960X^3+158512+59360X^2",
        ),
        u_list: &[
            "2106Y^4-16848Y^3+(729X^3-200160-1512X^2-127620X)Y^2+(510480X+935424+6048X^2-2916X^3)Y-2703520+1701X^5+9486X^4-740880X^2-2013232X-112392X^3",
            "-(2106Y^4+(5454X+1512-729X^2)Y^3+(-231696-119628X-3456X^2+729X^3)Y^2+(-43524X^3-219792X+45792-195576X^2-2916X^4)Y+143200X+8190X^4+13144X^3+972X^5+8608+39520X^2)",
            "-((-729X+5184)Y^4+(-41472+5832X)Y^3+(-179064-2673X^3-40788X^2-151560X)Y^2+(1048032+10692X^3+559584X+163152X^2)Y+152576X^3+328880X+376816X^2-290976+27894X^4+2025X^5)",
            "3*(243Y^5-2430Y^4+(2088+6066X+2025X^2)Y^3+(46008-12150X^2-23760X)Y^2+(430880X+403408+176824X^2+32600X^3+2565X^4)Y-738048-39280X^3-592576X-202528X^2-3672X^4)",
        ],
        c_list: &[
            // C_0 .. C_12 over F1..F5
            "-82099660820242200F1F3+32235149516099208F1F2-95452660752649056F5-398763269552541040F3-6774786532164971264+1525442326328940F1F5-53150472555074088F1F4+183431709096990792F2+117082538287640184F1^2+26800586276923736F4-635695300913479112F1",
            "31686984302424144F5+935824045548092/3F4-9637609703523444F1F5-25008719190731908F2+673556866266135956/3F3+9146416286935004F1F2+41020836187089844F1F3+10355838379726442488/3+399640736332326652/3F1-77647177824272164F1^2+32635980113943508F1F4",
            "-12025887423129076F3+5000846468065935F1F5-34054053314391234F2+9670685936191636F5-5096436215179806F1F4+65110227685004338F1-136194570485867444/3-4795455072849534F4-14187987869301234F1F2+13126899329056666F1^2-2654467381722550F1F3",
            "11207728140922953F2-1044316459487816F1F5+4054268582329185F1F2-6116228281311912F5+875320846743161F1^2-1694546558285089F1F3-281271228548233F1F4-259318888243793602+931316020753191F4-14452782305632417F3-25842666907378881F1",
            "428791323564693F1F3+11731631172861482/3F1+11184323737178309/3F3-504606917168286F1F2+168348316204284F1F4+1137997144652583F5+182185716795601865/3+13458281966236F4-1208394806691126F2-1510986531671354/3F1^2+340961275926865/3F1F5",
            "-46452442499126F1F3-48537181735174/3F4-18106253311940762/3-96733933399152F5-1157707902426130/3F3+32629773607505F1F2+39496097055685F2+62515859975054F1^2-1077076459078412/3F1-6624064232892F1F5-22475089275218F1F4",
            "940986280010659/3+129839421335F1F5+1241173308228F4+2723618645013F1F3+1653156637524F2+3836730854972F5-1269249923340F1F2-3892522628187F1^2+22177550872097F1+1514993425764F1F4+20226951722173F3",
            "142425253754F1^2+24523041006F1F2-21515774746F4-10557545749788-78860671872F5-49143435658F1F4-859116229730F1-653187112730F3+3868183792F1F5-89865695818F1F3-231020246178F2",
            "-241587607/3F1F5+68498821957/3F1+12362268546F2+349901856F1F2+742849515037/3+1303585160F5-464132376F4+1871964406F1F3+40941024352/3F3-9194076949/3F1^2+818792226F1F4",
            "18833520F5-3220F1F5-2252927810-525569928F1+32134979F1^2-264445499F2-5908104F1F2+5065804F4-26705139F1F3-15327819F1F4-47918416F3",
            "144932194/3+1775730F2+176462F4+20191915/3F1+161/3F1F5-312308F5-865108/3F1^2+197872F1F3-28578F1F2+3211861/3F3+8250F1F4",
            "-8021/3F4+433F1F2-9533/3F3+125F1^2+8471/3F1-125F1F4-72F5-125F1F3-26905F2-367930/3",
            "-28F1+7F3+6461/3+F5",
        ],
        expansions: &[
            (0, 1, 1, "q^-6+2q^-4+q^-2-1+2q^2+3q^6+2q^8+2q^12+2q^14+2q^16+q^18"),
            (1, 1, 1, "q^-7+1/3*q^-5+2/3*q^-3+4/3*q^-1+2+2/3*q+2/3*q^3+1/3*q^5+5/3*q^7+2q^9+7/3*q^11+1/3*q^13+5/3*q^15+2q^17-7/3*q^19"),
            (2, 1, 1, "q^-8+q^-6+2q^-4-15+3q^2+2q^4+2q^6+3q^8+2q^10+2q^12+4q^14+2q^16"),
            (3, 1, 1, "q^-9-q^-8+q^-7+q^-5+3q^-3+q^-2+3q^-1+6+3q-q^2+3q^3-2q^4+5q^5+q^6+3q^7-q^8+2q^9-2q^10+5q^11-2q^14+5q^15"),
            (4, 1, 1, "q^-10-q^-8-q^-4+3q^-2-5-q^2-q^4+q^6+q^8+3q^12+q^14-2q^16+q^18"),
            (5, 1, 1, "q^-11+2q^-9+4q^-7+4q^-5+6q^-3+8q^-1+6+8q+8q^3+13q^5+12q^7+12q^9+16q^11+q^13+12q^15+16q^17"),
        ],
        killer_den: Some("(X+2)^13*(X+3)*(X-10)"),
        ..base(
            52,
            5,
            &[
                "-1/2*T[19,3,25,3]*[25,1,19,1]",
                "1/3*T[15,2,4,2]*[4,1,15,1]",
                "-T[25,1,2,1]",
                "T[23,2,3,2]*[3,1,23,1]",
                "-1/2*T[16,10,4,10]",
                "1/2*T[14,12,13,12]",
            ],
        )
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weier::ModFuncExpr;

    #[test]
    fn all_generator_expressions_parse() {
        for rec in all_records() {
            for gexpr in rec.generators {
                ModFuncExpr::parse(rec.n, gexpr)
                    .unwrap_or_else(|e| panic!("N={}: `{gexpr}`: {e}", rec.n));
            }
        }
    }

    #[test]
    fn all_polynomial_fields_parse() {
        use crate::relations::{BivarPoly, MultiPoly};
        let fnames = ["F1", "F2", "F3", "F4", "F5", "F6"];
        for rec in all_records() {
            if let Some(eq) = rec.equation {
                BivarPoly::parse(eq).unwrap_or_else(|e| panic!("N={} eq: {e}", rec.n));
            }
            if let Some((num, den)) = rec.rn_g0 {
                BivarPoly::parse(num).unwrap();
                BivarPoly::parse(den).unwrap();
            }
            if let Some((a, b, c)) = rec.rn_g1 {
                BivarPoly::parse(a).unwrap();
                BivarPoly::parse(b).unwrap();
                BivarPoly::parse(c).unwrap();
            }
            if let Some((a, b, c, d)) = rec.rn_g2 {
                for s in [a, b, c, d] {
                    BivarPoly::parse(s).unwrap();
                }
            }
            for row in rec.relations {
                MultiPoly::parse(row, &fnames).unwrap();
            }
            if let Some(d) = rec.delta {
                BivarPoly::parse(d).unwrap();
            }
            for u in rec.u_list {
                BivarPoly::parse(u).unwrap();
            }
            for c in rec.c_list {
                MultiPoly::parse(c, &fnames[..5]).unwrap();
            }
            if let Some(k) = rec.killer_den {
                BivarPoly::parse(k).unwrap();
            }
        }
    }

    #[test]
    fn record_counts_match_genus() {
        for rec in all_records() {
            assert_eq!(rec.genus, crate::modcurve::genus0(rec.n), "N={}", rec.n);
            let count = rec.generators.len() as u32;
            // The genus-2 table rows list only F_1, F_2; the level-46 list
            // is kept verbatim with its surplus entry.
            let partial = rec.genus == 2 && rec.rn_g2.is_some() && count == 2;
            if rec.n != 46 && !partial {
                assert_eq!(count, rec.genus + 1, "N={} generator count", rec.n);
            }
        }
    }
}
