"""Word pools for the built-in synthetic corpus and the bundled synonym groups.

The synonym dictionary shipped in ``data/synonyms.tsv`` is derived from
``SYNONYM_GROUPS``: every member of a group maps to the other members, in
order. Groups therefore must not share words, and members are single words.
The corpus templates draw their content words from the same groups so the
model-free substitution attack has real coverage on toy text.
"""

from __future__ import annotations

# fmt: off
ADJ_GROUPS = [
    ["big", "large", "huge", "vast", "enormous"],
    ["small", "little", "tiny", "compact"],
    ["quick", "fast", "rapid", "swift", "speedy"],
    ["slow", "sluggish", "unhurried"],
    ["happy", "glad", "cheerful", "joyful", "merry"],
    ["sad", "unhappy", "gloomy", "mournful"],
    ["bright", "radiant", "shining", "gleaming"],
    ["dark", "dim", "shadowy", "murky"],
    ["old", "ancient", "aged", "weathered"],
    ["new", "fresh", "recent", "modern"],
    ["strong", "powerful", "mighty", "sturdy"],
    ["weak", "feeble", "frail", "fragile"],
    ["quiet", "silent", "hushed", "peaceful"],
    ["loud", "noisy", "deafening", "thunderous"],
    ["strange", "odd", "peculiar", "curious", "weird"],
    ["common", "ordinary", "usual", "typical"],
    ["important", "crucial", "vital", "essential"],
    ["simple", "plain", "basic", "modest"],
    ["difficult", "hard", "tough", "demanding"],
    ["easy", "effortless", "straightforward"],
    ["cold", "chilly", "frosty", "icy"],
    ["warm", "mild", "balmy", "temperate"],
    ["hot", "scorching", "blazing", "sweltering"],
    ["wet", "damp", "soaked", "humid"],
    ["dry", "arid", "parched", "dusty"],
    ["clean", "spotless", "tidy", "neat"],
    ["dirty", "filthy", "grimy", "muddy"],
    ["beautiful", "lovely", "gorgeous", "elegant"],
    ["ugly", "hideous", "unsightly"],
    ["rich", "wealthy", "prosperous", "affluent"],
    ["poor", "needy", "impoverished"],
    ["smart", "clever", "intelligent", "sharp"],
    ["foolish", "silly", "absurd", "ridiculous"],
    ["brave", "bold", "courageous", "fearless"],
    ["afraid", "scared", "frightened", "terrified"],
    ["angry", "furious", "irate", "enraged"],
    ["calm", "serene", "tranquil", "placid"],
    ["tired", "weary", "exhausted", "drowsy"],
    ["busy", "hectic", "bustling", "frantic"],
    ["empty", "vacant", "hollow", "deserted"],
    ["full", "crowded", "packed", "brimming"],
    ["tall", "towering", "lofty"],
    ["short", "stubby", "squat"],
    ["wide", "broad", "expansive"],
    ["narrow", "slim", "cramped"],
    ["deep", "profound", "bottomless"],
    ["shallow", "superficial"],
    ["heavy", "weighty", "hefty", "massive"],
    ["light", "weightless", "airy"],
    ["sweet", "sugary", "honeyed"],
    ["bitter", "sour", "acrid"],
    ["famous", "renowned", "celebrated", "notable"],
    ["obscure", "unknown", "forgotten"],
    ["careful", "cautious", "prudent", "wary"],
    ["careless", "reckless", "rash", "hasty"],
    ["honest", "truthful", "sincere", "candid"],
    ["dishonest", "deceitful", "crooked"],
    ["generous", "charitable", "lavish"],
    ["greedy", "selfish", "stingy"],
    ["gentle", "tender", "soft", "mellow"],
    ["rough", "coarse", "jagged", "rugged"],
    ["smooth", "sleek", "polished", "glossy"],
    ["steep", "abrupt", "sheer"],
    ["distant", "remote", "faraway"],
    ["nearby", "adjacent", "neighboring"],
    ["certain", "sure", "confident", "definite"],
    ["doubtful", "uncertain", "hesitant"],
    ["early", "premature", "punctual"],
    ["late", "tardy", "overdue", "delayed"],
    ["golden", "gilded", "amber"],
    ["crimson", "scarlet", "ruby"],
    ["vivid", "vibrant", "colorful", "lively"],
    ["pale", "pallid", "washed", "bleached"],
]

NOUN_GROUPS = [
    ["house", "home", "dwelling", "residence", "cottage"],
    ["car", "automobile", "vehicle", "sedan"],
    ["road", "street", "avenue", "lane", "highway"],
    ["forest", "woods", "woodland", "grove", "thicket"],
    ["river", "stream", "creek", "brook"],
    ["mountain", "peak", "summit", "ridge"],
    ["city", "town", "metropolis", "village"],
    ["storm", "tempest", "squall", "gale"],
    ["teacher", "instructor", "tutor", "mentor"],
    ["doctor", "physician", "medic", "surgeon"],
    ["child", "kid", "youngster", "toddler"],
    ["friend", "companion", "ally", "comrade"],
    ["enemy", "foe", "adversary", "rival"],
    ["job", "occupation", "profession", "trade"],
    ["money", "cash", "currency", "savings"],
    ["food", "cuisine", "fare", "provisions"],
    ["meal", "dinner", "supper", "feast", "banquet"],
    ["garden", "yard", "orchard", "meadow"],
    ["ocean", "sea", "gulf", "lagoon"],
    ["beach", "shore", "coast", "seaside"],
    ["building", "structure", "tower", "edifice"],
    ["bridge", "overpass", "viaduct"],
    ["market", "bazaar", "shop", "store"],
    ["school", "academy", "college", "institute"],
    ["library", "archive", "bookshop"],
    ["farmer", "rancher", "grower"],
    ["artist", "painter", "sculptor"],
    ["musician", "pianist", "violinist", "drummer"],
    ["writer", "author", "novelist", "poet"],
    ["scientist", "researcher", "scholar", "chemist"],
    ["engineer", "mechanic", "technician"],
    ["captain", "commander", "skipper"],
    ["sailor", "mariner", "seafarer"],
    ["soldier", "warrior", "fighter", "trooper"],
    ["king", "monarch", "ruler", "sovereign"],
    ["queen", "empress", "duchess"],
    ["castle", "fortress", "citadel", "palace"],
    ["journey", "voyage", "expedition", "trek"],
    ["story", "tale", "narrative", "account", "legend"],
    ["song", "melody", "tune", "anthem", "ballad"],
    ["picture", "image", "portrait", "photograph"],
    ["letter", "note", "message", "dispatch"],
    ["book", "volume", "manuscript", "tome"],
    ["idea", "notion", "concept", "thought"],
    ["problem", "puzzle", "riddle", "dilemma"],
    ["answer", "reply", "response", "solution"],
    ["secret", "mystery", "enigma"],
    ["danger", "peril", "hazard", "threat"],
    ["luck", "fortune", "chance", "fate"],
    ["noise", "sound", "racket", "clamor"],
    ["smell", "scent", "aroma", "fragrance"],
    ["rain", "drizzle", "downpour", "shower"],
    ["wind", "breeze", "draft", "gust"],
    ["snow", "frost", "sleet", "hail"],
    ["fire", "flame", "blaze", "bonfire"],
    ["smoke", "fumes", "haze", "mist"],
    ["stone", "rock", "boulder", "pebble"],
    ["field", "pasture", "prairie", "grassland"],
    ["valley", "canyon", "ravine", "gorge"],
    ["lake", "pond", "reservoir", "pool"],
    ["island", "isle", "atoll"],
    ["ship", "boat", "vessel", "ferry"],
    ["train", "locomotive", "railcar"],
    ["plane", "aircraft", "jet", "glider"],
    ["horse", "stallion", "mare", "pony"],
    ["dog", "hound", "puppy", "mutt"],
    ["cat", "kitten", "feline", "tabby"],
    ["bird", "sparrow", "finch", "wren"],
    ["crowd", "throng", "mob", "gathering"],
    ["party", "celebration", "festival", "gala"],
    ["war", "conflict", "battle", "skirmish"],
    ["peace", "truce", "harmony", "accord"],
    ["winter", "midwinter"],
    ["morning", "dawn", "daybreak", "sunrise"],
    ["evening", "dusk", "twilight", "sunset"],
    ["night", "midnight", "nightfall"],
    ["week", "fortnight"],
    ["kitchen", "pantry", "scullery"],
    ["window", "pane", "casement"],
    ["door", "gate", "entrance", "doorway"],
    ["roof", "rooftop", "canopy", "awning"],
    ["wall", "barrier", "fence", "hedge"],
    ["floor", "ground", "pavement", "tile"],
    ["chair", "seat", "bench", "stool"],
    ["table", "desk", "counter", "workbench"],
    ["clock", "timepiece", "chronometer"],
    ["machine", "device", "contraption", "gadget"],
    ["tool", "instrument", "implement", "utensil"],
    ["coat", "jacket", "cloak", "overcoat"],
    ["hat", "cap", "bonnet", "helmet"],
    ["box", "crate", "carton", "chest"],
    ["bag", "sack", "satchel", "pouch"],
    ["key", "latchkey", "passkey"],
    ["map", "chart", "atlas", "diagram"],
    ["coin", "token", "medallion"],
    ["jewel", "gem", "treasure", "trinket"],
    ["lamp", "lantern", "torch", "beacon"],
    ["mirror", "glass", "reflection"],
    ["basket", "hamper", "pail", "bucket"],
    ["bread", "loaf", "baguette"],
    ["cake", "pastry", "tart", "pudding"],
    ["coffee", "espresso", "brew"],
    ["harvest", "crop", "yield", "bounty"],
    ["silence", "stillness", "hush", "lull"],
    ["shadow", "silhouette", "outline"],
    ["courage", "valor", "bravery", "nerve"],
    ["wisdom", "insight", "judgment", "prudence"],
    ["beauty", "splendor", "grace", "charm"],
    ["strength", "power", "force", "vigor"],
    ["speed", "pace", "velocity", "tempo"],
    ["corner", "nook", "alcove", "recess"],
    ["path", "trail", "track", "footpath"],
    ["hill", "knoll", "mound", "slope"],
    ["barn", "stable", "shed", "granary"],
    ["mill", "factory", "workshop", "foundry"],
    ["dock", "pier", "wharf", "harbor"],
    ["crew", "team", "squad", "band"],
    ["leader", "chief", "boss", "director"],
    ["stranger", "outsider", "newcomer", "visitor"],
    ["neighbor", "local", "resident", "tenant"],
    ["merchant", "trader", "vendor", "dealer"],
    ["thief", "robber", "burglar", "bandit"],
    ["guard", "sentry", "watchman", "sentinel"],
    ["judge", "magistrate", "arbiter"],
    ["lawyer", "attorney", "counsel"],
    ["priest", "monk", "cleric", "chaplain"],
    ["hunter", "tracker", "trapper"],
    ["baker", "cook", "chef"],
    ["tailor", "weaver", "seamstress"],
    ["miner", "digger", "prospector"],
    ["pilot", "aviator", "navigator"],
    ["nurse", "caretaker", "attendant"],
    ["student", "pupil", "apprentice", "learner"],
]

VPAST_GROUPS = [
    ["walked", "strolled", "marched", "wandered", "ambled"],
    ["ran", "sprinted", "dashed", "raced", "bolted"],
    ["said", "stated", "remarked", "declared", "announced"],
    ["asked", "inquired", "questioned", "queried"],
    ["answered", "replied", "responded", "retorted"],
    ["saw", "noticed", "observed", "spotted", "glimpsed"],
    ["looked", "gazed", "stared", "peered", "glanced"],
    ["found", "discovered", "located", "unearthed"],
    ["lost", "misplaced", "forfeited"],
    ["made", "built", "constructed", "crafted", "assembled"],
    ["broke", "shattered", "smashed", "cracked", "fractured"],
    ["took", "grabbed", "seized", "snatched", "clutched"],
    ["gave", "handed", "offered", "presented", "granted"],
    ["kept", "retained", "preserved", "guarded"],
    ["left", "departed", "exited", "vanished"],
    ["arrived", "appeared", "emerged", "surfaced"],
    ["opened", "unlocked", "unsealed", "unfastened"],
    ["closed", "shut", "sealed", "fastened"],
    ["carried", "hauled", "lugged", "transported"],
    ["dropped", "released", "discarded", "abandoned"],
    ["pushed", "shoved", "pressed", "nudged"],
    ["pulled", "dragged", "tugged", "yanked"],
    ["threw", "tossed", "hurled", "flung", "pitched"],
    ["caught", "intercepted", "snared", "trapped"],
    ["ate", "devoured", "consumed", "nibbled"],
    ["drank", "sipped", "gulped", "swallowed"],
    ["slept", "dozed", "napped", "snoozed"],
    ["woke", "stirred", "roused"],
    ["laughed", "chuckled", "giggled", "snickered"],
    ["cried", "wept", "sobbed", "wailed"],
    ["shouted", "yelled", "hollered", "bellowed"],
    ["whispered", "murmured", "muttered", "mumbled"],
    ["sang", "hummed", "chanted", "crooned"],
    ["danced", "twirled", "spun", "swayed"],
    ["jumped", "leaped", "hopped", "vaulted"],
    ["fell", "tumbled", "collapsed", "toppled"],
    ["climbed", "scaled", "ascended", "clambered"],
    ["crossed", "traversed", "forded"],
    ["followed", "trailed", "pursued", "chased"],
    ["escaped", "fled", "retreated", "absconded"],
    ["hid", "concealed", "stashed", "buried"],
    ["revealed", "exposed", "disclosed", "unveiled"],
    ["watched", "monitored", "surveyed", "studied"],
    ["ignored", "overlooked", "disregarded", "neglected"],
    ["remembered", "recalled", "recollected"],
    ["forgot", "omitted"],
    ["decided", "resolved", "determined", "concluded"],
    ["wondered", "pondered", "mused", "speculated"],
    ["believed", "trusted", "assumed", "supposed"],
    ["doubted", "suspected", "mistrusted"],
    ["wanted", "desired", "craved", "coveted"],
    ["needed", "required", "demanded"],
    ["helped", "assisted", "aided", "supported"],
    ["hurt", "injured", "wounded", "harmed"],
    ["healed", "mended", "cured", "restored"],
    ["started", "began", "commenced", "initiated"],
    ["finished", "completed", "ended", "wrapped"],
    ["continued", "persisted", "proceeded", "resumed"],
    ["stopped", "halted", "paused", "ceased"],
    ["waited", "lingered", "loitered", "tarried"],
    ["hurried", "rushed", "hastened", "scurried"],
    ["traveled", "journeyed", "roamed", "voyaged"],
    ["returned", "reappeared"],
    ["visited", "toured", "frequented"],
    ["bought", "purchased", "acquired", "procured"],
    ["sold", "peddled", "auctioned"],
    ["paid", "compensated", "reimbursed"],
    ["counted", "tallied", "enumerated"],
    ["measured", "gauged", "calibrated"],
    ["weighed", "balanced"],
    ["cooked", "baked", "roasted", "simmered"],
    ["cleaned", "scrubbed", "mopped", "swept"],
    ["repaired", "fixed", "patched", "overhauled"],
    ["painted", "sketched", "drew", "illustrated"],
    ["wrote", "penned", "scribbled", "drafted"],
    ["read", "scanned", "perused", "skimmed"],
    ["taught", "instructed", "coached", "trained"],
    ["learned", "mastered", "absorbed", "grasped"],
    ["played", "performed", "rehearsed"],
    ["worked", "labored", "toiled", "slaved"],
    ["rested", "relaxed", "lounged", "reclined"],
    ["planted", "sowed", "seeded", "cultivated"],
    ["gathered", "collected", "harvested", "amassed"],
    ["burned", "scorched", "charred", "singed"],
    ["froze", "chilled", "numbed"],
    ["melted", "thawed", "dissolved"],
    ["grew", "expanded", "swelled", "flourished"],
    ["shrank", "contracted", "dwindled", "withered"],
    ["moved", "shifted", "relocated", "migrated"],
    ["stayed", "remained", "dwelled", "resided"],
    ["turned", "rotated", "pivoted", "swiveled"],
    ["shook", "trembled", "quivered", "shuddered"],
    ["smiled", "grinned", "beamed", "smirked"],
    ["frowned", "scowled", "glowered", "grimaced"],
    ["nodded", "bowed", "curtsied"],
    ["pointed", "gestured", "signaled", "beckoned"],
    ["knocked", "tapped", "rapped", "pounded"],
    ["rang", "chimed", "tolled", "jingled"],
    ["echoed", "resonated", "reverberated"],
    ["glowed", "shimmered", "sparkled", "glittered"],
    ["faded", "dimmed", "waned", "ebbed"],
]

ADV_LIST = [
    "quickly", "slowly", "quietly", "loudly", "carefully", "carelessly",
    "suddenly", "gradually", "eagerly", "reluctantly", "gently", "roughly",
    "bravely", "nervously", "calmly", "angrily", "happily", "sadly",
    "easily", "barely", "nearly", "almost", "finally", "eventually",
    "immediately", "instantly", "patiently", "silently", "swiftly",
    "steadily", "firmly", "softly", "brightly", "dimly", "warmly",
    "coldly", "kindly", "sternly", "proudly", "humbly", "secretly",
    "openly", "rarely", "often", "sometimes", "always", "never",
    "somewhere", "everywhere", "together", "alone", "twice", "again",
]

NAME_LIST = [
    "Anna", "Marcus", "Elena", "Viktor", "Clara", "Jonas", "Maria", "Peter",
    "Sofia", "Karl", "Nadia", "Oskar", "Lena", "Felix", "Greta", "Hugo",
    "Ingrid", "Lukas", "Freya", "Anton", "Zelda", "Caleb", "Zoe", "Kasper",
    "Nora", "Emil", "Astrid", "Leon", "Maja", "Theo", "Alice", "Ruben",
    "Hanna", "Ivan", "Petra", "Simon", "Vera", "Adam", "Klara", "Erik",
]

TIME_LIST = [
    "morning", "afternoon", "evening", "night", "spring", "summer",
    "autumn", "winter", "weekend", "holiday", "festival", "storm",
    "harvest", "journey", "meeting", "ceremony",
]

PREP_LIST = [
    "near", "beside", "behind", "beyond", "under", "above", "across",
    "along", "around", "toward", "inside", "outside", "past", "through",
]

CONNECTIVES = [
    "and", "but", "while", "because", "although", "so", "yet", "before",
    "after", "when", "since", "until",
]

# Closed-class words excluded from synonym substitution: pronouns,
# prepositions, determiners, auxiliaries, conjunctions.
STOPLIST = [
    "a", "an", "the", "this", "that", "these", "those", "some", "any",
    "each", "every", "no", "none", "all", "both", "few", "many", "much",
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
    "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
    "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
    "itself", "ourselves", "themselves", "who", "whom", "whose", "which",
    "what", "in", "on", "at", "by", "for", "with", "about", "against",
    "between", "into", "onto", "through", "during", "before", "after",
    "above", "below", "under", "over", "to", "from", "up", "down", "of",
    "off", "near", "beside", "behind", "beyond", "across", "along",
    "around", "toward", "towards", "inside", "outside", "past", "upon",
    "within", "without", "am", "is", "are", "was", "were", "be", "been",
    "being", "do", "does", "did", "have", "has", "had", "will", "would",
    "shall", "should", "may", "might", "must", "can", "could", "and",
    "but", "or", "nor", "so", "yet", "if", "then", "than", "as", "while",
    "because", "although", "though", "since", "until", "when", "where",
    "not", "there", "here",
]
# fmt: on

SYNONYM_GROUPS: list[list[str]] = ADJ_GROUPS + NOUN_GROUPS + VPAST_GROUPS


def build_synonym_entries() -> dict[str, list[str]]:
    """Expand groups into headword -> ranked synonyms; validates disjointness."""
    entries: dict[str, list[str]] = {}
    for group in SYNONYM_GROUPS:
        for word in group:
            if word in entries:
                raise ValueError(f"word {word!r} appears in more than one group")
            entries[word] = [w for w in group if w != word]
    return entries
