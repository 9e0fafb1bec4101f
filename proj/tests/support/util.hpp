#pragma once

#include <optional>
#include <string>
#include <utility>

#include "timelink/common.hpp"

namespace timelink::testing {

// Runs |f| and hands back the Error it threw, if any.
template <typename F>
std::optional<Error> capture(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(TL_FIXTURE_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
  return std::string(TL_DATA_DIR) + "/" + name;
}

// A small representative document exercising every modeled tag plus one
// preserved SLINK and entity escapes.
inline const char* kSampleXml = R"(<?xml version="1.0" ?>
<TimeML xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance">
<DOCID>sample_0001</DOCID>

<DCT><TIMEX3 tid="t0" type="DATE" value="1989-10-30" temporalFunction="false" functionInDocument="CREATION_TIME">10/30/89</TIMEX3></DCT>

<TEXT>Marlin Corp. <EVENT eid="e1" class="REPORTING">said</EVENT> it <EVENT eid="e2" class="OCCURRENCE">completed</EVENT> the purchase of R&amp;D assets <SIGNAL sid="s1">on</SIGNAL> <TIMEX3 tid="t1" type="DATE" value="1989-10-27">Friday</TIMEX3>, <CSIGNAL id="cs1">because</CSIGNAL> demand <EVENT eid="e3" class="OCCURRENCE">rose</EVENT> for <TIMEX3 tid="t2" type="DURATION" value="P2M">two months</TIMEX3>.</TEXT>

<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE" polarity="POS"/>
<MAKEINSTANCE eiid="ei2" eventID="e2" pos="VERB" tense="PAST" aspect="NONE" polarity="POS"/>
<MAKEINSTANCE eiid="ei3" eventID="e3" pos="VERB" tense="PAST" aspect="NONE" polarity="POS"/>
<SLINK lid="sl1" relType="EVIDENTIAL" eventInstanceID="ei1" subordinatedEventInstance="ei2"/>
<TLINK lid="l1" relType="IS_INCLUDED" eventInstanceID="ei2" relatedToTime="t1" signalID="s1"/>
<TLINK lid="l2" relType="BEFORE" eventInstanceID="ei2" relatedToTime="t0"/>
<CLINK id="l3" source="ei3" target="ei2" csignalID="cs1"/>
</TimeML>
)";

// Two sentences with events, timexes, and signals; pairs with kTwoSentAnn.
inline const char* kTwoSentXml = R"(<?xml version="1.0" ?>
<TimeML>
<DOCID>twosent_0001</DOCID>
<DCT><TIMEX3 tid="t0" type="DATE" value="1989-11-01" functionInDocument="CREATION_TIME">11/01/89</TIMEX3></DCT>
<TEXT>The army <EVENT eid="e1" class="OCCURRENCE">seized</EVENT> the town <SIGNAL sid="s1">after</SIGNAL> rebels <EVENT eid="e2" class="OCCURRENCE">attacked</EVENT> a convoy <SIGNAL sid="s2">on</SIGNAL> <TIMEX3 tid="t1" type="DATE" value="1989-10-27">Friday</TIMEX3>. Commanders <EVENT eid="e3" class="REPORTING">said</EVENT> the assault <EVENT eid="e4" class="OCCURRENCE">began</EVENT> <SIGNAL sid="s3">on</SIGNAL> <TIMEX3 tid="t2" type="DATE" value="1989-10-30">Monday</TIMEX3>.</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei2" eventID="e2" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei3" eventID="e3" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei4" eventID="e4" pos="VERB" tense="PAST" aspect="NONE"/>
<TLINK lid="l1" relType="AFTER" eventInstanceID="ei1" relatedToEventInstance="ei2"/>
</TimeML>
)";

// Sidecar layer for kTwoSentXml: CoNLL-2008 style labels, seized/said as
// main verbs, one coreference set, one supersense.
inline const char* kTwoSentAnn =
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tarmy\tarmy\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\tseized\tseize\tVBD\tB-VP\t0\tROOT\t1\n"
    "4\tthe\tthe\tDT\tB-NP\t5\tNMOD\t0\n"
    "5\ttown\ttown\tNN\tI-NP\t3\tOBJ\t0\n"
    "6\tafter\tafter\tIN\tB-PP\t3\tTMP\t0\n"
    "7\trebels\trebel\tNNS\tB-NP\t8\tSBJ\t0\n"
    "8\tattacked\tattack\tVBD\tB-VP\t6\tSUB\t0\n"
    "9\ta\ta\tDT\tB-NP\t10\tNMOD\t0\n"
    "10\tconvoy\tconvoy\tNN\tI-NP\t8\tOBJ\t0\n"
    "11\ton\ton\tIN\tB-PP\t8\tTMP\t0\n"
    "12\tFriday\tfriday\tNNP\tB-NP\t11\tPMOD\t0\n"
    "13\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tCommanders\tcommander\tNNS\tB-NP\t2\tSBJ\t0\n"
    "2\tsaid\tsay\tVBD\tB-VP\t0\tROOT\t1\n"
    "3\tthe\tthe\tDT\tB-NP\t4\tNMOD\t0\n"
    "4\tassault\tassault\tNN\tI-NP\t5\tSBJ\t0\tn.act\n"
    "5\tbegan\tbegin\tVBD\tB-VP\t2\tOBJ\t0\n"
    "6\ton\ton\tIN\tB-PP\t5\tTMP\t0\n"
    "7\tMonday\tmonday\tNNP\tB-NP\t6\tPMOD\t0\n"
    "8\t.\t.\t.\tO\t2\tP\t0\n"
    "#coref\tei2\tei4\n";

inline const char* kTwoSentSim = "attack\tseize\t0.42\nbegin\tsay\t0.05\n";

// Three past events in a BEFORE chain: ei1 < ei2 annotated, ei2 < ei3
// annotated, ei1 < ei3 left for the reasoner.
inline const char* kChainXml = R"(<?xml version="1.0" ?>
<TimeML>
<DOCID>chain_0001</DOCID>
<DCT><TIMEX3 tid="t0" type="DATE" value="2000-01-01" functionInDocument="CREATION_TIME">2000-01-01</TIMEX3></DCT>
<TEXT>They <EVENT eid="e1" class="OCCURRENCE">met</EVENT>, <EVENT eid="e2" class="OCCURRENCE">argued</EVENT> and <EVENT eid="e3" class="OCCURRENCE">settled</EVENT>.</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei2" eventID="e2" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei3" eventID="e3" pos="VERB" tense="PAST" aspect="NONE"/>
<TLINK lid="l1" relType="BEFORE" eventInstanceID="ei1" relatedToEventInstance="ei2"/>
<TLINK lid="l2" relType="BEFORE" eventInstanceID="ei2" relatedToEventInstance="ei3"/>
</TimeML>
)";

// Ten single-clause sentences, one per event-event or event-timex rule
// trigger: passive logical subject, aspectual and general OPRD chains, a
// perfect-tense verb pair, duration patterns, a signalled preposition, and a
// bare temporal modifier left to the classifiers. Pairs with kSieveAnn.
inline const char* kSieveXml = R"(<?xml version="1.0" ?>
<TimeML>
<DOCID>sieve_0001</DOCID>
<DCT><TIMEX3 tid="t0" type="DATE" value="2010-05-05" functionInDocument="CREATION_TIME">05/05/2010</TIMEX3></DCT>
<TEXT>The crisis was <EVENT eid="e1" class="OCCURRENCE">touched</EVENT> off by the <EVENT eid="e2" class="OCCURRENCE">collapse</EVENT> of the bank. Prices <EVENT eid="e3" class="ASPECTUAL">began</EVENT> to <EVENT eid="e4" class="OCCURRENCE">rise</EVENT>. The workers <EVENT eid="e5" class="ASPECTUAL">stopped</EVENT> <EVENT eid="e6" class="OCCURRENCE">building</EVENT> the dam. The group <EVENT eid="e7" class="I_ACTION">attempted</EVENT> to <EVENT eid="e8" class="OCCURRENCE">block</EVENT> the deal. Engineers have been <EVENT eid="e9" class="OCCURRENCE">working</EVENT> to <EVENT eid="e10" class="OCCURRENCE">develop</EVENT> the system. The firm <EVENT eid="e11" class="OCCURRENCE">sold</EVENT> the unit it had <EVENT eid="e12" class="OCCURRENCE">acquired</EVENT> in <TIMEX3 tid="t1" type="DATE" value="2010-03">March</TIMEX3>. The festival will <EVENT eid="e13" class="OCCURRENCE">run</EVENT> from <TIMEX3 tid="t2" type="DATE" value="2010-05-11">Tuesday</TIMEX3> to <TIMEX3 tid="t3" type="DATE" value="2010-05-13">Thursday</TIMEX3>. The ban <EVENT eid="e14" class="STATE">remained</EVENT> <SIGNAL sid="s1">until</SIGNAL> <TIMEX3 tid="t4" type="DATE" value="2010-05-07">Friday</TIMEX3>. Output <EVENT eid="e15" class="OCCURRENCE">fell</EVENT> between <TIMEX3 tid="t5" type="DATE" value="2010-04">April</TIMEX3> and <TIMEX3 tid="t6" type="DATE" value="2010-06">June</TIMEX3>. Revenue <EVENT eid="e16" class="OCCURRENCE">doubled</EVENT> in <TIMEX3 tid="t7" type="DATE" value="2001">2001</TIMEX3> - <TIMEX3 tid="t8" type="DATE" value="2004">2004</TIMEX3>.</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei2" eventID="e2" pos="NOUN" tense="NONE" aspect="NONE"/>
<MAKEINSTANCE eiid="ei3" eventID="e3" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei4" eventID="e4" pos="VERB" tense="INFINITIVE" aspect="NONE"/>
<MAKEINSTANCE eiid="ei5" eventID="e5" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei6" eventID="e6" pos="VERB" tense="PRESPART" aspect="NONE"/>
<MAKEINSTANCE eiid="ei7" eventID="e7" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei8" eventID="e8" pos="VERB" tense="INFINITIVE" aspect="NONE"/>
<MAKEINSTANCE eiid="ei9" eventID="e9" pos="VERB" tense="PRESENT" aspect="PERFECTIVE_PROGRESSIVE"/>
<MAKEINSTANCE eiid="ei10" eventID="e10" pos="VERB" tense="INFINITIVE" aspect="NONE"/>
<MAKEINSTANCE eiid="ei11" eventID="e11" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei12" eventID="e12" pos="VERB" tense="PAST" aspect="PERFECTIVE"/>
<MAKEINSTANCE eiid="ei13" eventID="e13" pos="VERB" tense="FUTURE" aspect="NONE"/>
<MAKEINSTANCE eiid="ei14" eventID="e14" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei15" eventID="e15" pos="VERB" tense="PAST" aspect="NONE"/>
<MAKEINSTANCE eiid="ei16" eventID="e16" pos="VERB" tense="PAST" aspect="NONE"/>
</TimeML>
)";

// Sidecar layer for kSieveXml; rise and develop corefer.
inline const char* kSieveAnn =
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tcrisis\tcrisis\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\twas\tbe\tVBD\tB-VP\t0\tROOT\t0\n"
    "4\ttouched\ttouch\tVBN\tI-VP\t3\tVC\t1\n"
    "5\toff\toff\tRP\tB-PRT\t4\tPRT\t0\n"
    "6\tby\tby\tIN\tB-PP\t4\tLGS\t0\n"
    "7\tthe\tthe\tDT\tB-NP\t8\tNMOD\t0\n"
    "8\tcollapse\tcollapse\tNN\tI-NP\t6\tPMOD\t0\n"
    "9\tof\tof\tIN\tB-PP\t8\tNMOD\t0\n"
    "10\tthe\tthe\tDT\tB-NP\t11\tNMOD\t0\n"
    "11\tbank\tbank\tNN\tI-NP\t9\tPMOD\t0\n"
    "12\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tPrices\tprice\tNNS\tB-NP\t2\tSBJ\t0\n"
    "2\tbegan\tbegin\tVBD\tB-VP\t0\tROOT\t1\n"
    "3\tto\tto\tTO\tI-VP\t2\tOPRD\t0\n"
    "4\trise\trise\tVB\tI-VP\t3\tIM\t0\n"
    "5\t.\t.\t.\tO\t2\tP\t0\n"
    "\n"
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tworkers\tworker\tNNS\tI-NP\t3\tSBJ\t0\n"
    "3\tstopped\tstop\tVBD\tB-VP\t0\tROOT\t1\n"
    "4\tbuilding\tbuild\tVBG\tB-VP\t3\tOPRD\t0\n"
    "5\tthe\tthe\tDT\tB-NP\t6\tNMOD\t0\n"
    "6\tdam\tdam\tNN\tI-NP\t4\tOBJ\t0\n"
    "7\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tgroup\tgroup\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\tattempted\tattempt\tVBD\tB-VP\t0\tROOT\t1\n"
    "4\tto\tto\tTO\tI-VP\t3\tOPRD\t0\n"
    "5\tblock\tblock\tVB\tI-VP\t4\tIM\t0\n"
    "6\tthe\tthe\tDT\tB-NP\t7\tNMOD\t0\n"
    "7\tdeal\tdeal\tNN\tI-NP\t5\tOBJ\t0\n"
    "8\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tEngineers\tengineer\tNNS\tB-NP\t2\tSBJ\t0\n"
    "2\thave\thave\tVBP\tB-VP\t0\tROOT\t0\n"
    "3\tbeen\tbe\tVBN\tI-VP\t2\tVC\t0\n"
    "4\tworking\twork\tVBG\tI-VP\t3\tVC\t1\n"
    "5\tto\tto\tTO\tI-VP\t4\tOPRD\t0\n"
    "6\tdevelop\tdevelop\tVB\tI-VP\t5\tIM\t0\n"
    "7\tthe\tthe\tDT\tB-NP\t8\tNMOD\t0\n"
    "8\tsystem\tsystem\tNN\tI-NP\t6\tOBJ\t0\n"
    "9\t.\t.\t.\tO\t2\tP\t0\n"
    "\n"
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tfirm\tfirm\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\tsold\tsell\tVBD\tB-VP\t0\tROOT\t1\n"
    "4\tthe\tthe\tDT\tB-NP\t5\tNMOD\t0\n"
    "5\tunit\tunit\tNN\tI-NP\t3\tOBJ\t0\n"
    "6\tit\tit\tPRP\tB-NP\t7\tSBJ\t0\n"
    "7\thad\thave\tVBD\tB-VP\t5\tNMOD\t0\n"
    "8\tacquired\tacquire\tVBN\tI-VP\t7\tVC\t0\n"
    "9\tin\tin\tIN\tB-PP\t8\tTMP\t0\n"
    "10\tMarch\tmarch\tNNP\tB-NP\t9\tPMOD\t0\n"
    "11\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tfestival\tfestival\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\twill\twill\tMD\tB-VP\t0\tROOT\t0\n"
    "4\trun\trun\tVB\tI-VP\t3\tVC\t1\n"
    "5\tfrom\tfrom\tIN\tB-PP\t4\tTMP\t0\n"
    "6\tTuesday\ttuesday\tNNP\tB-NP\t5\tPMOD\t0\n"
    "7\tto\tto\tIN\tB-PP\t4\tTMP\t0\n"
    "8\tThursday\tthursday\tNNP\tB-NP\t7\tPMOD\t0\n"
    "9\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tThe\tthe\tDT\tB-NP\t2\tNMOD\t0\n"
    "2\tban\tban\tNN\tI-NP\t3\tSBJ\t0\n"
    "3\tremained\tremain\tVBD\tB-VP\t0\tROOT\t1\n"
    "4\tuntil\tuntil\tIN\tB-PP\t3\tTMP\t0\n"
    "5\tFriday\tfriday\tNNP\tB-NP\t4\tPMOD\t0\n"
    "6\t.\t.\t.\tO\t3\tP\t0\n"
    "\n"
    "1\tOutput\toutput\tNN\tB-NP\t2\tSBJ\t0\n"
    "2\tfell\tfall\tVBD\tB-VP\t0\tROOT\t1\n"
    "3\tbetween\tbetween\tIN\tB-PP\t2\tTMP\t0\n"
    "4\tApril\tapril\tNNP\tB-NP\t3\tPMOD\t0\n"
    "5\tand\tand\tCC\tI-NP\t4\tCOORD\t0\n"
    "6\tJune\tjune\tNNP\tI-NP\t5\tCONJ\t0\n"
    "7\t.\t.\t.\tO\t2\tP\t0\n"
    "\n"
    "1\tRevenue\trevenue\tNN\tB-NP\t2\tSBJ\t0\n"
    "2\tdoubled\tdouble\tVBD\tB-VP\t0\tROOT\t1\n"
    "3\tin\tin\tIN\tB-PP\t2\tTMP\t0\n"
    "4\t2001\t2001\tCD\tB-NP\t3\tPMOD\t0\n"
    "5\t-\t-\tHYPH\tI-NP\t4\tP\t0\n"
    "6\t2004\t2004\tCD\tI-NP\t5\tPMOD\t0\n"
    "7\t.\t.\t.\tO\t2\tP\t0\n"
    "#coref\tei4\tei10\n";

// One event, one bare temporal modifier, a DCT the value rules cannot compare:
// the sieve labels exactly one pair. Pairs with kBareAnn.
inline const char* kBareXml = R"(<?xml version="1.0" ?>
<TimeML>
<DOCID>bare_0001</DOCID>
<DCT><TIMEX3 tid="t0" type="DATE" value="1998-08-07" functionInDocument="CREATION_TIME">08/07/98</TIMEX3></DCT>
<TEXT>Police <EVENT eid="e1" class="REPORTING">confirmed</EVENT> <TIMEX3 tid="t1" type="DATE" value="PAST_REF">Friday</TIMEX3>.</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE"/>
</TimeML>
)";

inline const char* kBareAnn =
    "1\tPolice\tpolice\tNNS\tB-NP\t2\tSBJ\t0\n"
    "2\tconfirmed\tconfirm\tVBD\tB-VP\t0\tROOT\t1\n"
    "3\tFriday\tfriday\tNNP\tB-NP\t2\tTMP\t0\n"
    "4\t.\t.\t.\tO\t2\tP\t0\n";

}  // namespace timelink::testing
