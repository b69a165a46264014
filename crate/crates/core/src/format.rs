//! JSON file formats: equation instances, relation systems, function
//! families, and coset reports. Rationals are written as strings.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::RatStr;
use crate::arith::{FactoredRationalFunction, RationalFunction};
use crate::dependence::SystemInstance;
use crate::error::{Error, Result};
use crate::search::{CosetReport, EquationInstance, GroupSpec, XiSet};

pub const VERSION: u32 = 1;
pub const DEFAULT_BOX: u32 = 3;
pub const DEFAULT_TRUNCATION: usize = 32;

fn check_version(v: u32) -> Result<()> {
    if v != VERSION {
        return Err(Error::Parse(format!("unsupported schema version {v}")));
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// `a_1 x_1 + ... + a_n x_n = 1` with the group given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub v: u32,
    pub n: usize,
    pub coefficients: Vec<RationalFunction>,
    pub generators: Vec<Vec<FactoredRationalFunction>>,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub box_size: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: InstanceFile = parse_json(text)?;
        check_version(f.v)?;
        Ok(f)
    }

    pub fn box_or_default(&self) -> u32 {
        self.box_size.unwrap_or(DEFAULT_BOX)
    }

    /// Builds the instance, with `truncation` overriding the file default.
    pub fn to_instance(&self, truncation: Option<usize>) -> Result<EquationInstance> {
        let group = GroupSpec::new(self.n, self.generators.clone())?;
        let m = truncation.or(self.truncation).unwrap_or(DEFAULT_TRUNCATION);
        EquationInstance::new(group, self.coefficients.clone(), m)
    }
}

/// `sum_i xi_i a_i A_i^u = 0`; every tuple entry must equal 1 at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub v: u32,
    pub coefficients: Vec<RationalFunction>,
    pub tuples: Vec<Vec<RationalFunction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl SystemFile {
    pub fn to_system(&self, truncation: Option<usize>) -> Result<SystemInstance> {
        let m = truncation.or(self.truncation).unwrap_or(DEFAULT_TRUNCATION);
        SystemInstance::from_rational(self.coefficients.clone(), self.tuples.clone(), m)
    }
}

/// Either file kind accepted by the membership query.
#[derive(Clone, Debug)]
pub enum MembershipInput {
    Instance(InstanceFile),
    System(SystemFile),
}

impl MembershipInput {
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = parse_json(text)?;
        if value.get("tuples").is_some() {
            let f: SystemFile =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            check_version(f.v)?;
            Ok(MembershipInput::System(f))
        } else {
            let f: InstanceFile =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            check_version(f.v)?;
            Ok(MembershipInput::Instance(f))
        }
    }

    pub fn to_system(&self, truncation: Option<usize>) -> Result<SystemInstance> {
        match self {
            MembershipInput::Instance(f) => f.to_instance(truncation)?.reduction_system(),
            MembershipInput::System(f) => f.to_system(truncation),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub v: u32,
    pub functions: Vec<RationalFunction>,
}

impl FamilyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: FamilyFile = parse_json(text)?;
        check_version(f.v)?;
        Ok(f)
    }
}

/// A nonnegative integer written as a JSON number when it fits in `u64`
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigCount(pub BigUint);

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(BigCount(BigUint::from(x))),
            Raw::Str(s) => s
                .parse()
                .map(BigCount)
                .map_err(|_| serde::de::Error::custom(format!("not a count: {s:?}"))),
        }
    }
}

/// The constant tuple of a coset, or the marker `"family"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiField {
    Values(Vec<RatStr>),
    Family,
}

impl Serialize for XiField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            XiField::Values(v) => v.serialize(s),
            XiField::Family => s.serialize_str("family"),
        }
    }
}

impl<'de> Deserialize<'de> for XiField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Values(Vec<RatStr>),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Values(v) => Ok(XiField::Values(v)),
            Raw::Tag(t) if t == "family" => Ok(XiField::Family),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown xi marker {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetRecord {
    pub w: Vec<i64>,
    pub xi: XiField,
    pub nondegenerate: bool,
    /// Coordinates of the representative solution.
    pub x: Vec<RationalFunction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub v: u32,
    pub rank: usize,
    pub bound: BigCount,
    #[serde(rename = "box")]
    pub box_size: u32,
    pub digest: String,
    pub cosets: Vec<CosetRecord>,
    pub within_bound: bool,
}

impl ReportFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: ReportFile = parse_json(text)?;
        check_version(f.v)?;
        Ok(f)
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

impl From<&CosetReport> for ReportFile {
    fn from(r: &CosetReport) -> Self {
        ReportFile {
            v: VERSION,
            rank: r.rank,
            bound: BigCount(r.bound.clone()),
            box_size: r.box_size,
            digest: r.digest.clone(),
            cosets: r
                .cosets
                .iter()
                .map(|c| CosetRecord {
                    w: c.w.clone(),
                    xi: match &c.representative.xi {
                        XiSet::Point(v) => XiField::Values(v.iter().cloned().map(RatStr).collect()),
                        XiSet::Family { .. } => XiField::Family,
                    },
                    nondegenerate: c.nondegenerate,
                    x: c.representative.x.clone(),
                })
                .collect(),
            within_bound: r.within_bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLASSIC: &str = r#"{"v":1,"n":2,
        "coefficients":[{"num":[1],"den":[1]},{"num":[1],"den":[1]}],
        "generators":[
          [{"constant":"1","factors":[{"poly":[0,1],"exp":1}]},{"constant":"1","factors":[]}],
          [{"constant":"-1","factors":[{"poly":[-1,1],"exp":1}]},{"constant":"1","factors":[]}],
          [{"constant":"1","factors":[]},{"constant":"1","factors":[{"poly":[0,1],"exp":1}]}],
          [{"constant":"1","factors":[]},{"constant":"-1","factors":[{"poly":[-1,1],"exp":1}]}]],
        "box":2,"truncation":16}"#;

    #[test]
    fn instance_parses() {
        let f = InstanceFile::parse(CLASSIC).unwrap();
        assert_eq!(f.box_or_default(), 2);
        let inst = f.to_instance(None).unwrap();
        assert_eq!((inst.n(), inst.r(), inst.truncation()), (2, 4, 16));
        assert_eq!(f.to_instance(Some(40)).unwrap().truncation(), 40);
    }

    #[test]
    fn instance_errors() {
        assert!(matches!(InstanceFile::parse("{"), Err(Error::Parse(_))));
        let v2 = CLASSIC.replace(r#""v":1"#, r#""v":2"#);
        assert!(matches!(InstanceFile::parse(&v2), Err(Error::Parse(_))));
        let zero_den = CLASSIC.replacen(r#""den":[1]"#, r#""den":[0]"#, 1);
        assert!(matches!(
            InstanceFile::parse(&zero_den),
            Err(Error::Parse(_))
        ));
        let short = CLASSIC.replace(r#""n":2"#, r#""n":3"#);
        let f = InstanceFile::parse(&short).unwrap();
        assert!(matches!(f.to_instance(None), Err(Error::Invalid(_))));
    }

    #[test]
    fn report_round_trip() {
        let inst = InstanceFile::parse(CLASSIC)
            .unwrap()
            .to_instance(None)
            .unwrap();
        let report = crate::search::verify_bound(&inst, 1).unwrap();
        let text = ReportFile::from(&report).to_json();
        let back = ReportFile::parse(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(text.contains(r#""xi":"family""#));
    }

    #[test]
    fn big_counts() {
        let big = BigCount("123456789012345678901234567890".parse().unwrap());
        let j = serde_json::to_string(&big).unwrap();
        assert_eq!(j, r#""123456789012345678901234567890""#);
        assert_eq!(serde_json::from_str::<BigCount>(&j).unwrap(), big);
        assert_eq!(
            serde_json::to_string(&BigCount(BigUint::from(81u32))).unwrap(),
            "81"
        );
    }

    #[test]
    fn membership_input_kinds() {
        let sys = r#"{"v":1,"coefficients":[{"num":[1],"den":[1]},{"num":[1],"den":[1]},{"num":[-1],"den":[1]}],
            "tuples":[[{"num":[1,1],"den":[1]}],[{"num":[1,-1],"den":[1]}],[{"num":[1],"den":[1]}]],"truncation":12}"#;
        let s = MembershipInput::parse(sys)
            .unwrap()
            .to_system(None)
            .unwrap();
        assert_eq!((s.h(), s.r(), s.order()), (3, 1, 12));
        let s = MembershipInput::parse(CLASSIC)
            .unwrap()
            .to_system(None)
            .unwrap();
        assert_eq!((s.h(), s.r()), (3, 4));
    }
}
