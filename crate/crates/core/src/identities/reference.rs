//! Published identities for levels 2, 3, 5 and 17, used as reference data.

use super::ReferenceIdentity;
use crate::jst::IdentityKind;

pub const REFERENCE_IDENTITIES: &[ReferenceIdentity] = &[
    ReferenceIdentity {
        name: "delta2",
        level: 2,
        m: 1,
        kind: IdentityKind::KroneckerPower,
        terms: &[
            (&[(4, 2)], 0, "17/1152"),
            (&[(8, 1)], 0, "-17/1152"),
        ],
    },
    ReferenceIdentity {
        name: "j2_delta2",
        level: 2,
        m: 1,
        kind: IdentityKind::HauptmodulNumerator,
        terms: &[
            (&[(4, 2)], 0, "-77/144"),
            (&[(8, 1)], 0, "221/144"),
        ],
    },
    ReferenceIdentity {
        name: "j3_delta3",
        level: 3,
        m: 1,
        kind: IdentityKind::HauptmodulNumerator,
        terms: &[
            (&[(4, 3)], 0, "541/1728"),
            (&[(6, 2)], 0, "14461/24300"),
            (&[(12, 1)], 0, "-353101/388800"),
        ],
    },
    ReferenceIdentity {
        name: "delta3",
        level: 3,
        m: 1,
        kind: IdentityKind::KroneckerPower,
        terms: &[
            (&[(4, 3)], 0, "-25/3456"),
            (&[(6, 2)], 0, "-1049/72900"),
            (&[(12, 1)], 0, "50443/2332800"),
        ],
    },
    ReferenceIdentity {
        name: "j5_delta5_jst2",
        level: 5,
        m: 1,
        kind: IdentityKind::HauptmodulNumerator,
        terms: &[
            (&[(4, 1)], 0, "1"),
            (&[], 1, "-172/13"),
        ],
    },
    ReferenceIdentity {
        name: "j5_delta5_cubed",
        level: 5,
        m: 3,
        kind: IdentityKind::HauptmodulNumerator,
        terms: &[
            (&[(4, 3)], 0, "10330419229/11016000000"),
            (&[(6, 2)], 0, "36659/2448000"),
            (&[(8, 1), (4, 1)], 0, "-28493266087/11016000000"),
            (&[(12, 1)], 0, "2999646893/1836000000"),
        ],
    },
    ReferenceIdentity {
        name: "delta5_cubed",
        level: 5,
        m: 3,
        kind: IdentityKind::KroneckerPower,
        terms: &[
            (&[(4, 3)], 0, "-9383387/162000000"),
            (&[(6, 2)], 0, "-13/9000"),
            (&[(8, 1), (4, 1)], 0, "3226717/20250000"),
            (&[(12, 1)], 0, "-5398783/54000000"),
        ],
    },
    ReferenceIdentity {
        name: "j17_delta17_ninth",
        level: 17,
        m: 9,
        kind: IdentityKind::HauptmodulNumerator,
        terms: &[
            (&[(4, 9)], 0, "81682801889356820001790224970058471917613108127362192461613220533/3269846855773492420944242299705431901325975126578932604974661632"),
            (&[(6, 2), (4, 6)], 0, "-57998022455299820152689336251300228068357304045275286805301/1197457521190948626327504142387996791894290229520024731648"),
            (&[(6, 4), (4, 3)], 0, "40497436515338798408532045523225489025965457561330556316291/1852774239194857326466652706713276353684752025138495488000"),
            (&[(6, 6)], 0, "-3758480257690225061233693208729793594924453574315163/550341367907988517797569501748755788899740024832000"),
            (&[(8, 1), (4, 7)], 0, "-19414695740146736017085565287911573267947533788487530546931336997391/235020242758719767755367415291327917907804462222860780982553804800"),
            (&[(8, 1), (6, 2), (4, 4)], 0, "87392429573930662513617849766871793131053840056808626436739811257/429213680251880648249264766037197600094609654143583864750080000"),
            (&[(8, 1), (6, 4), (4, 1)], 0, "-5203291809002722923420727059042670529678338299681100572348497/159222786180808051493227966983172186644783377160339456000000"),
            (&[(8, 2), (4, 5)], 0, "-3408021881707620602850044141317857445104537752516243513916285865231/546558704090045971524110268119367250948382470285722746471055360000"),
            (&[(8, 2), (6, 2), (4, 2)], 0, "-16613503534705813629198888518084937494696284987808069450102921171/95380817833751255166503281341599466687691034254129747722240000"),
            (&[(8, 3), (4, 3)], 0, "2084310764069464266375452181379302123943671896630614730410490282708941/24481275287366642474517439092846658115396298148214664685682688000000"),
            (&[(8, 3), (6, 2)], 0, "-9922136522478992021059089148544040599546174236808342061149389/600269903901646354129469435526559143650833331894479749120000"),
            (&[(8, 4), (4, 1)], 0, "39971724261482388723963548784518805970985444209456555554807081177551/580296895700542636433005963682291155327912252402125385142108160000"),
            (&[(10, 1), (6, 1), (4, 5)], 0, "-12179813594881425731721530954876395006064827564865712237231709007/111595556865488968544808839169671376024598510077331804835020800"),
            (&[(10, 1), (6, 3), (4, 2)], 0, "-1625258630148098158844608861059428762679867410760523654188493/305707749467151458866997696607690598357984084147851755520000"),
            (&[(10, 1), (8, 1), (6, 1), (4, 3)], 0, "201956165169824936446796453214912198922237546648448042931247350643/697472230409306053405055244810446100153740687983323780218880000"),
            (&[(10, 1), (8, 1), (6, 3)], 0, "2813492092804509777019550484166164259166371672470004179865987/110819059181842403839286665020287841904769230503596261376000"),
            (&[(10, 1), (8, 2), (6, 1), (4, 1)], 0, "-298150566267220507427939657298379519874877536521040468383984890437/2789888921637224213620220979241784400614962751933295120875520000"),
            (&[(10, 2), (4, 4)], 0, "270142921637107712433606444209937936587102913556256973385136064101/1339146682385867622537706070036056512295182120927981658020249600"),
            (&[(10, 2), (6, 2), (4, 1)], 0, "-118581244701243654625492701946386671875131600350921745366238181/1324733581024322988423656685299992592884597697974024273920000"),
            (&[(10, 2), (8, 1), (4, 2)], 0, "-622123658423176240663440801764445330920253599234807877389715511211/1287641040755641944747794298111592800283828962430751594250240000"),
            (&[(10, 2), (8, 2)], 0, "-41865928593946018666000515901728601665582738769261235242020892533923/970881344729754026339836900776140971414007037672786702064680960000"),
            (&[(10, 3), (6, 1)], 0, "226293023118065631604956427915797705760362816981994085929537/2676229456614793916007387243030288066433530702977826816000"),
            (&[(12, 1), (4, 6)], 0, "65939988441096018663885334259995469677/1934740380512325216435446698160947200"),
            (&[(12, 1), (6, 2), (4, 3)], 0, "-47508694350054116027131578232203571279280588142292406574968917/496775092884121120658871256987497222331724136740259102720000"),
            (&[(12, 1), (6, 4)], 0, "83239130800439493554048989758304142656207424379566457431/2818127349459872237687554172747939125917634265088000000"),
            (&[(12, 1), (10, 1), (6, 1), (4, 2)], 0, "18888098569562683617871650219704377045625972851708713833077441/99355018576824224131774251397499444466344827348051820544000"),
            (&[(12, 2), (4, 3)], 0, "-6458100747185096513157918629463271052359/48368509512808130410886167454023680000"),
            (&[(12, 3)], 0, "13456181814083822984196529705199819074619/77183791775757654910988565086208000000"),
        ],
    },
    ReferenceIdentity {
        name: "delta17_ninth",
        level: 17,
        m: 9,
        kind: IdentityKind::KroneckerPower,
        terms: &[
            (&[(4, 9)], 0, "-4410175152266863630497017095287573799108101287320169/513269785149806673002504728644869309011527884341248"),
            (&[(6, 2), (4, 6)], 0, "19865215328281078919219868581830673116116281279861/1077982783479943155001973186393454060492470353920"),
            (&[(6, 4), (4, 3)], 0, "-1147994099850642662275857201554136108251932243/116332425049635581779544719243012827040972800"),
            (&[(6, 6)], 0, "257163348099153057405937570593213576401/86387408378599422207040509547266048000"),
            (&[(8, 1), (4, 7)], 0, "4110275602561195487616512760454051197916582070385787933/147565063230569418488220109485399926340814266748108800"),
            (&[(8, 1), (6, 2), (4, 4)], 0, "-2455783752311086170178917777522781426586892700694851/33686961983748223593811662074795439390389698560000"),
            (&[(8, 1), (6, 4), (4, 1)], 0, "1581775255838347728745765778157179068844765441801/99973177777030578091796243099464148238336000000"),
            (&[(8, 2), (4, 5)], 0, "6518162027197225998646914560331274207300504121132929847/1844563290382117731102751368567499079260178334351360000"),
            (&[(8, 2), (6, 2), (4, 2)], 0, "877428475040946870505912480572673877165899233742103/14971983103888099375027405366575750840173199360000"),
            (&[(8, 3), (4, 3)], 0, "-905386954382815429576749294608296584568282296576830392199/30742721506368628851712522809458317987669638905856000000"),
            (&[(8, 3), (6, 2)], 0, "207452833460189538372130707619778910743078771025457/36182292501062906822982896302558064530418565120000"),
            (&[(8, 4), (4, 1)], 0, "-6765708051219903828398888390867858547193923080811280631/273268635612165589793000202750740604334841234718720000"),
            (&[(10, 1), (6, 1), (4, 5)], 0, "7025876804004356240055790621469114807967838822691/194096623064255692728887138824306132775652556800"),
            (&[(10, 1), (6, 3), (4, 2)], 0, "203944326653207551761076174261325691779672537/265856650044181038692865355610763385896960000"),
            (&[(10, 1), (8, 1), (6, 1), (4, 3)], 0, "-88050066607840362983543089832425254378757106875786733/875861011577453813439103213944681424150132162560000"),
            (&[(10, 1), (8, 1), (6, 3)], 0, "-114754891200905341203611097297729345611512888589/13916266346562656470378037039445409434776371200"),
            (&[(10, 1), (8, 2), (6, 1), (4, 1)], 0, "66394449571915938902069992307694226884439057160324951/1751722023154907626878206427889362848300264325120000"),
            (&[(10, 2), (4, 4)], 0, "-3664823227867792880990102284616506270153441589203601/52551660694647228806346192836680885449007929753600"),
            (&[(10, 2), (6, 2), (4, 1)], 0, "14427551517079169370308214911137713786234600256489/415888419552447204861872371293770856671477760000"),
            (&[(10, 2), (8, 1), (4, 2)], 0, "34114607946828890598140117698005174033430842408608771/202121771902489341562869972448772636342338191360000"),
            (&[(10, 2), (8, 2)], 0, "1186277940138861135501685541633367245343342399481395343/76199908007238481769201979613187283901061498142720000"),
            (&[(10, 3), (6, 1)], 0, "-2240074672005345691936094582673021223667749558747/73095540406187690551480598591026392990744576000"),
            (&[(12, 1), (4, 6)], 0, "-473713406463236803998887/40792493008974879129600"),
            (&[(12, 1), (6, 2), (4, 3)], 0, "187627181944563944553278965376532704223825410987/5030908301037667800748456104360131330703360000"),
            (&[(12, 1), (6, 4)], 0, "-3176432730003963047610699437833910664552631/221181554210724382719750270133948416000000"),
            (&[(12, 1), (10, 1), (6, 1), (4, 2)], 0, "-2144787933823513840784295072436611609578065848101/31191631466433540364640427847032814250360832000"),
            (&[(12, 2), (4, 3)], 0, "46882982116711758510391631/1019812325224371978240000"),
            (&[(12, 3)], 0, "-4639965815125172171338200503/76485924391827898368000000"),
        ],
    },
];
