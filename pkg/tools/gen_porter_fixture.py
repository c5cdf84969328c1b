"""Regenerate tests/data/porter_vocab.tsv from the reference oracle.

The fixture is the frozen (word, stem) vocabulary the test suite holds the
production stemmer to. Expected values come from tests/porter_oracle.py;
generation aborts if the oracle and the production implementation disagree
anywhere, so a stale or broken fixture can never be written silently.

Run from the repository root:  python tools/gen_porter_fixture.py
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))
sys.path.insert(0, str(ROOT / "src"))

from porter_oracle import oracle_stem          # noqa: E402
from intentbot.porter import porter_stem       # noqa: E402

# Words used as worked examples in the published algorithm description,
# plus classic hand-traced forms.
CLASSIC = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing
filing happy sky relational conditional rational valenci hesitanci
digitizer conformabli radicalli differentli vileli analogousli
vietnamization predication operator feudalism decisiveness hopefulness
callousness formaliti sensitiviti sensibiliti triplicate formative
formalize electriciti electrical hopeful goodness revival allowance
inference airliner gyroscopic adjustable defensible irritant replacement
adjustment dependent adoption homologou communism activate angulariti
homologous effective bowdlerize probate rate cease controll roll
generalizations oscillators visiting visited visitor timings timing shop
shops shopping university universities agreement agreements trouble
troubles troubling oscillator generalization
""".split()

COMMON = """
a able about above accept accepted across act acted action actions active
activity actually add added addition address addressed adjust adjusted
admire admitted advise advised afford after again against age agency agent
ago agree agreeing air all allow allowed almost alone along already also
although always am among amount an and animal announce announced another
answer answered any anyone anything appear appeared apple applies apply
applying appoint appointment approach are area argue argued arm around
arrange arranged arrive arrived art article artist as ask asked asking at
attention authority available average avoid avoided away baby back bad bag
balance ball bank bar base based basic basis be bear beat beautiful beauty
became because become becomes bed been before began begin beginning begins
behavior behind being believe believed benefit best better between beyond
big bill bird bit black block blood blue board boat body book booked books
born both bottle bottom box boy branch break bright bring broken brother
brought budget build building built bus business busy but buy buying by
call called calling came can capital car card care career carefully carried
carry carrying case cases cat catch caught cause caused cell center central
century certain certainly chair challenge chance change changed changes
changing character charge check chief child children choice choose chose
church circle cities citizen city civil claim claimed class classes clear
clearly close closed closely closing clothes cloud club coach cold collect
collection college color combination come comes coming comment commercial
commission committee common community company compare compared competition
complete completed completely computer concern concerned condition
conditions conference congress connect connected consider considered
consumer contain contained continue continued continuing control cost
could country county couple course court cover covered create created
creating cultural culture cup current currently customer customers cut
dance danced dark data date daughter day days dead deal death debate decade
decide decided decision decisions deep defense degree deliver delivered
delivery demand democratic describe described design designed designer
despite detail details determine develop developed developing development
did die died difference differences different difficult dinner direction
directly director discover discovered discuss discussed discussion disease
do doctor does dog doing dollar done door down draw drawing dream drive
driver drop dropped drug during duty each early earn earned earring ease
easily east easy eat economic economy edge education effect effort eight
either election electric element else employee end ended energy enjoy
enjoyed enough enter entered entire environment especially establish
established even evening event events ever every everybody everyone
everything evidence exactly example excellent exchange exchanged executive
exist existed expect expected experience expert explain explained eye face
fact factor fail failed fall falls family far fast father fear federal feel
feeling feet fell felt few field fight figure file filled film final
finally financial find finding fine finger finish finished fire firm first
fish fit five floor fly focus followed following food foot for force
foreign forget form formal former forward found four free friend friends
from front full fund further future game garden gas gave general generation
get gets getting girl give given gives giving glass go goal goes going gold
golden gone good got government great greatest green ground group grow
growing grown growth guess gun guy had hair half hand hang happen happened
happens hard has have having he head health hear heard heart heat heavy
held help helped her here herself high him himself his history hit hold
home hope hoped hospital hot hotel hour house how however huge human
hundred husband idea identify if image imagine impact important improve
improved in include included including increase increased indeed indicate
individual industry information inside instead institution interest
interesting international interview into investment involve involved is
issue issues it item its itself job join joined just keep keeping kept key kid
kill killed kind kitchen knew know knowledge known land language large
last late later laugh law lawyer lay lead leader leadership learn learned
least leave led left leg legal less let letter level lie life light like
likely line list listen little live lived living local long look looked
looking lose loss lost lot love loved low machine made magazine main
maintain major make makes making man manage managed management manager
many market marriage material matter may maybe me mean meaning means meant
measure media medical meet meeting member memory mention message method
middle might military million mind minute miss mission model modern moment
money month more morning most mother mouth move moved movement movie much
music must my myself name nation national natural nature near nearly
necessary need needed needs network never new news next nice night no none
nor north not note nothing notice now number occur occurred of off offer
offered office officer official often oil ok old on once one only onto
open opened operation opportunity option or order ordered organization
others our out outside over own owner page pain painting paper parent
park part particular particularly partner party pass passed past patient
pattern pay paying payment peace people per perform performance perhaps
period person personal phone physical pick picture piece place placed
plan planned planning plant play played player playing point police policy
political politics polish polished poor popular population position
positive possible power practice prepare prepared present president
pressure pretty prevent previous price priced private probably problem
process produce produced product production professional professor program
project property protect protected prove provide provided public pull
purchase purchased purpose push put quality question quickly quite race
radio raise raised range rarely rather reach reached read ready real
reality realize really reason receive received recent recently recognize
record red reduce reduced reflect reform region relate related relation
relationship religious remain remained remember remove removed repair
repaired report reported represent require required research resource
respond response responsibility rest result results return returned reveal
revealed rich ride right rise risk road rock role room rule run running
safe said sale sales same save saved saw say saying scene school science
scientist score sea season seat second section security see seek seem
seemed seen sell selling send senior sense sent series serious serve
served service set seven several shake share she shift ship shipped
shooting short shot should shoulder show showed shown side sign significant
similar simple simply since sing single sister sit site situation six size
skill skin small smile so social society soldier some somebody someone
something sometimes son song soon sort sound source south space speak
special specific speech spend spent sport spring staff stage stand standard
star start started state statement station stay stayed step still stock
stop stopped store stories story strategy street strong structure student
study studied stuff style subject success successful such suddenly suffer
suggest suggested summer support supported sure surface system table take
taken talk talked task tax teach teacher team technology television tell
ten tend term test testing than thank thanks that the their them themselves
then theory there these they thing think thinking third this those though
thought thousand threat three through throughout throw time timing tiny to
today together told tonight too took top total touch toward town trade
traditional training travel treat treatment tree trial tried trip trouble
true truth try trying turn turned two type under understand understood
unit until up upon us use used useful using usually value various very
victim view violence visit voice vote wait waited walk walked wall want
wanted war watch watched water way ways we weapon wear week weekend weight
well went were west western what whatever when where whether which while
white who whole whom whose why wide wife will win wind window wish with
within without woman women word words wore work worked worker working
works world worry would write writer writing written wrong wrote yard yeah
year years yes yet you young your yourself
""".split()

BASES = [
    "connect", "adjust", "hope", "rate", "operate", "relate", "activ",
    "motor", "tim", "visit", "polish", "deliver", "certif", "pay", "ship",
    "repair", "design", "book", "exchange", "return", "type", "dance",
    "bake", "stop", "run", "begin", "refer", "control", "label", "happy",
    "easy", "busy", "tidy", "deny", "apply", "carry", "marry", "study",
    "play", "enjoy", "destroy", "buy", "stay", "agree", "free", "see",
    "feed", "need", "speed", "proceed", "succeed", "exceed", "nation",
    "form", "sense", "final", "critic", "general", "special", "digit",
]

SUFFIXES = [
    "", "s", "es", "ed", "ing", "ings", "er", "ers", "ly", "ness", "ment",
    "ments", "ful", "fulness", "ation", "ations", "ization", "izer", "ator",
    "ive", "iveness", "able", "ible", "abli", "ance", "ence", "ant", "ent",
    "ism", "ity", "iti", "aliti", "iviti", "biliti", "ous", "ousli",
    "ousness", "al", "alli", "ional", "tional", "ational", "icate", "ative",
    "alize", "iciti", "ical", "enci", "anci", "eli", "entli", "ion", "y",
]


def build_vocabulary() -> list[str]:
    words: set[str] = set(CLASSIC) | set(COMMON)
    for base in BASES:
        for suffix in SUFFIXES:
            words.add(base + suffix)
    rng = random.Random(20240601)
    for _ in range(2500):
        n = rng.randint(1, 12)
        words.add("".join(rng.choice("abcdefghijklmnopqrstuvwxyz")
                          for _ in range(n)))
    return sorted(words)


def main() -> int:
    vocab = build_vocabulary()
    rows = []
    mismatches = []
    for word in vocab:
        expected = oracle_stem(word)
        actual = porter_stem(word)
        if actual != expected:
            mismatches.append((word, expected, actual))
        rows.append(f"{word}\t{expected}\n")
    if mismatches:
        for word, expected, actual in mismatches[:50]:
            print(f"DISAGREE {word}: oracle={expected} impl={actual}")
        print(f"{len(mismatches)} disagreements; fixture NOT written")
        return 1
    out = ROOT / "tests" / "data" / "porter_vocab.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(rows), encoding="utf-8")
    print(f"wrote {len(rows)} entries to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
