//! Name pools and phrase material for synthetic acknowledgements.

pub(crate) const GIVEN_NAMES: &[&str] = &[
    "Maria", "Jinsong", "Xiao", "Yong", "Wei", "Mei", "Hiroshi", "Yuki", "Kenji", "Aiko", "Jürgen", "Søren", "Åsa",
    "Łukasz", "Zoë", "José", "Ana", "Sofía", "Carmen", "Luis", "João", "Inês", "Pierre", "Amélie", "Élodie",
    "François", "Giulia", "Marco", "Luca", "Chiara", "Anna", "Peter", "John", "Sarah", "Emily", "David", "Michael",
    "Laura", "Olivia", "Daniel", "Rachel", "Hannah", "Priya", "Rahul", "Anil", "Deepa", "Arjun", "Fatima", "Omar",
    "Layla", "Youssef", "Amir", "Noor", "Kwame", "Amara", "Chinedu", "Ngozi", "Olga", "Dmitri", "Ivan", "Katarzyna",
    "Tomasz", "Agnieszka", "Eva", "Lars", "Ingrid", "Mikko", "Aino", "Sven", "Freya", "Hyun", "Jiwoo", "Minji",
    "Thanh", "Linh", "Duc", "Ahmet", "Elif", "Mehmet", "Zeynep", "Nikos", "Eleni", "Andrea", "Stefan", "Paula",
    "Karen", "Jean-Luc", "Anne-Marie", "Seán", "Siobhán", "Niamh", "Ciarán", "Vincent", "Gabriel", "Beatriz",
    "Rui", "Tariq", "Yasmin", "Nadia", "Oskar", "Helga", "Bruno", "Camille", "Mathieu", "Quentin", "Valeria",
    "Xavier", "Ursula", "Irene", "Ewa", "Haruto", "Vivian",
];

pub(crate) const SURNAMES: &[&str] = &[
    "Zhang", "Feng", "Xu", "Wang", "Li", "Chen", "Liu", "Yang", "Huang", "Zhao", "Wu", "Zhou", "Sun", "Ma", "Zhu",
    "Tanaka", "Suzuki", "Sato", "Watanabe", "Nakamura", "Kim", "Park", "Lee", "Choi", "Nguyen", "Tran", "Pham",
    "Müller", "Schmidt", "Schneider", "Fischer", "Weber", "Becker", "Wagner", "Hoffmann", "Schäfer", "Koch",
    "García", "Martínez", "López", "González", "Rodríguez", "Fernández", "Pérez", "Sánchez", "Silva", "Santos",
    "Oliveira", "Souza", "Rossi", "Russo", "Ferrari", "Esposito", "Bianchi", "Romano", "Martin", "Bernard", "Dubois",
    "Richard", "Petit", "Durand", "Lefèvre", "Smith", "Johnson", "Williams", "Brown", "Jones", "Miller", "Davis",
    "Wilson", "Anderson", "Taylor", "Moore", "Jackson", "White", "Harris", "Clark", "Lewis", "Walker", "Hall", "Allen",
    "King", "Wright", "Scott", "Green", "Baker", "Adams", "Nelson", "Hill", "Campbell", "Mitchell", "Roberts",
    "Carter", "Phillips", "Evans", "Turner", "Parker", "Collins", "Edwards", "Stewart", "Morris", "Murphy", "Cook",
    "Rogers", "Morgan", "Cooper", "Peterson", "Bailey", "Reed", "Kelly", "Cox", "Ward", "Richardson", "Watson",
    "Brooks", "Wood", "Bennett", "Gray", "Hughes", "Price", "Sanders", "Myers", "Ross", "Foster", "Kowalski", "Nowak",
    "Wiśniewski", "Wójcik", "Ivanov", "Petrov", "Smirnov", "Novak", "Horvat", "Kovač", "Nielsen", "Jensen", "Hansen",
    "Andersen", "Johansson", "Karlsson", "Lindqvist", "Virtanen", "Korhonen", "Yılmaz", "Kaya", "Demir",
    "Papadopoulos", "Georgiou", "Cohen", "Levi", "Haddad", "Khan", "Ahmed", "Hussain", "Patel", "Sharma", "Singh",
    "Gupta", "Kumar", "Reddy", "Okafor", "Mensah", "Diallo", "O'Brien", "O'Connor", "D'Angelo", "Lloyd-Jones",
    "Lemieux", "Desjardins", "Castaño", "Fujimoto", "Gagnon", "van Berg", "van der Meer", "de Souza", "da Silva",
    "del Rio", "von Weber", "La Rosa", "de la Cruz", "Ødegaard", "Ålund", "Çelik", "Øster",
];

/// Surnames listed in the generated lexicon without ever being planted.
pub(crate) const NOISE_SURNAMES: &[&str] = &[
    "Abbott", "Acosta", "Ainsworth", "Barrett", "Blackwood", "Caldwell", "Dalton", "Eriksen", "Farrow", "Gallagher",
    "Hargreaves", "Iversen", "Jacobsen", "Keller", "Lindgren", "Mahoney", "Navarro", "Osei", "Pacheco", "Quinn",
    "Rasmussen", "Salazar", "Thornton", "Underwood", "Valdez", "Whitfield", "Yamamoto", "Zielinski", "Ishikawa",
    "Okonkwo", "Bergström", "Håkansson", "Duarte", "Ferreira", "Gómez", "Moreau", "Fontaine", "Marchetti",
    "Colombo", "Vogel", "Krüger", "Zimmermann", "Hartmann", "Lange", "Brandt", "Kaur", "Iyer", "Menon", "Nair",
    "Bose", "Das", "Ghosh", "Rahman", "Aziz", "Saleh", "Mansour", "Adeyemi", "Boateng", "Kariuki", "Mwangi",
];

/// Surnames of the default blacklist entries; real surnames, so the
/// benchmark lookup alone does not remove them.
pub(crate) const BLACKLIST_SURNAMES: &[&str] =
    &["Banting", "Curie", "Ingelheim", "Carlos", "von Humboldt", "Best", "Franklin", "Bosch"];

pub(crate) const HONORIFICS: &[&str] = &["Dr.", "Prof.", "Dr", "Professor"];

pub(crate) const DEFAULT_ACK_TEMPLATES: &[&str] = &[
    "We thank {names} for helpful discussions.",
    "The authors are grateful to {names} for technical assistance.",
    "{names} provided valuable comments on the manuscript.",
    "We acknowledge {names} for assistance with data collection.",
    "Special thanks to {names} for access to samples.",
    "We would like to thank {names} for their support during fieldwork.",
    "{names} kindly provided reagents and protocols.",
    "We are indebted to {names} for statistical advice.",
];

pub(crate) const REPEAT_TEMPLATES: &[&str] =
    &["{name} also read an earlier draft.", "We thank {name} once more for careful proofreading."];

pub(crate) const SELF_MENTION_MULTI: &[&str] =
    &["{names} contributed equally to this work.", "{names} designed the study and wrote the paper."];

pub(crate) const SELF_MENTION_SINGLE: &[&str] =
    &["{name} acknowledges a sabbatical leave.", "{name} was supported by a travel grant."];

/// `(template, planted non-person name)`.
pub(crate) const BLACKLIST_SENTENCES: &[(&str, &str)] = &[
    ("Part of this work was funded by a Marie Curie fellowship.", "Marie Curie"),
    ("This study was also supported by the Instituto de Salud Carlos III (PI15/00001).", "Instituto de Salud Carlos III"),
    ("Support from Boehringer Ingelheim is gratefully acknowledged.", "Boehringer Ingelheim"),
    ("The first author held a Frederick Banting postdoctoral fellowship.", "Frederick Banting"),
    ("The second author held an Alexander von Humboldt fellowship.", "Alexander von Humboldt"),
    ("Additionally, a Rosalind Franklin fellowship supported this work.", "Rosalind Franklin"),
];

/// `(funder, acronym, weight)`.
pub(crate) const FUNDERS: &[(&str, &str, u32)] = &[
    ("National Science Foundation", "NSF", 6),
    ("National Institutes of Health", "NIH", 6),
    ("European Research Council", "ERC", 6),
    ("Swiss National Science Foundation", "SNSF", 6),
    ("Australian Research Council", "ARC", 6),
    ("Wellcome Trust", "", 6),
    ("Social Sciences and Humanities Research Council", "SSHRC", 6),
    ("Ministry of Science and Technology", "MOST", 6),
    ("Howard Hughes Medical Institute", "HHMI", 6),
    ("Medical Research Council", "MRC", 6),
    ("Engineering and Physical Sciences Research Council", "EPSRC", 6),
    ("National Natural Science Foundation of China", "NSFC", 1),
    ("Natural Sciences and Engineering Research Council of Canada", "NSERC", 1),
    ("Deutsche Forschungsgemeinschaft", "DFG", 1),
    ("Japan Society for the Promotion of Science", "JSPS", 1),
    ("Agence Nationale de la Recherche", "ANR", 1),
];

pub(crate) const FUNDING_TEMPLATES: &[&str] = &[
    "This work was supported by the {funder} (grant {code}).",
    "This research was funded by the {funder} under grant {code}.",
    "Funding was provided by the {funder} (award {code}).",
    "We acknowledge financial support from the {funder} (grant no. {code}).",
    "The {funder} supported this work through grant {code}.",
];

pub(crate) const CODE_PREFIXES: &[&str] = &["", "R01GM", "DE-SC", "ANR-15-", "PID2019-", "EP-"];
