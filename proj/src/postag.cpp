#include "polarity/postag.hpp"

#include <cctype>

namespace polarity {

TokenSeq tag_pos(const TokenSeq& seq, const PosTagger& tagger, TagStats* stats) {
  TokenSeq out = seq;
  std::string prev_surface, prev_tag;
  for (auto& tok : out.tokens) {
    if (tok.kind == TokenKind::Punct) {
      prev_surface.clear();
      prev_tag.clear();
      continue;
    }
    auto tag = tagger.tag(tok.surface, prev_surface, prev_tag);
    if (stats) ++stats->words;
    if (!tag) {
      tag = "UNK";
      if (stats) ++stats->unknown;
    }
    prev_surface = tok.surface;
    prev_tag = *tag;
    tok.pos_tag = std::move(*tag);
  }
  return out;
}

namespace {

struct LexEntry {
  const char* word;
  const char* tag;
};

// Primary tags; ambiguity beyond the noun/verb set below is not modeled.
constexpr LexEntry kLexicon[] = {
    // determiners and quantifiers
    {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"that", "DT"},
    {"these", "DT"}, {"those", "DT"}, {"some", "DT"}, {"any", "DT"}, {"each", "DT"},
    {"every", "DT"}, {"either", "DT"}, {"neither", "DT"}, {"all", "DT"}, {"both", "DT"},
    {"another", "DT"}, {"such", "DT"}, {"no", "DT"},
    // prepositions and subordinators
    {"of", "IN"}, {"in", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"}, {"for", "IN"},
    {"with", "IN"}, {"from", "IN"}, {"about", "IN"}, {"into", "IN"}, {"over", "IN"},
    {"after", "IN"}, {"under", "IN"}, {"between", "IN"}, {"through", "IN"},
    {"during", "IN"}, {"against", "IN"}, {"without", "IN"}, {"within", "IN"},
    {"along", "IN"}, {"across", "IN"}, {"behind", "IN"}, {"beyond", "IN"},
    {"despite", "IN"}, {"toward", "IN"}, {"towards", "IN"}, {"upon", "IN"},
    {"among", "IN"}, {"around", "IN"}, {"as", "IN"}, {"if", "IN"}, {"than", "IN"},
    {"because", "IN"}, {"while", "IN"}, {"before", "IN"}, {"since", "IN"},
    {"until", "IN"}, {"though", "IN"}, {"although", "IN"}, {"unless", "IN"},
    {"whether", "IN"}, {"near", "IN"}, {"off", "IN"}, {"out", "IN"}, {"up", "IN"},
    {"down", "IN"}, {"like", "IN"},
    // pronouns
    {"i", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"she", "PRP"}, {"it", "PRP"},
    {"we", "PRP"}, {"they", "PRP"}, {"me", "PRP"}, {"him", "PRP"}, {"us", "PRP"},
    {"them", "PRP"}, {"myself", "PRP"}, {"yourself", "PRP"}, {"himself", "PRP"},
    {"herself", "PRP"}, {"itself", "PRP"}, {"ourselves", "PRP"}, {"themselves", "PRP"},
    {"someone", "PRP"}, {"anyone", "PRP"}, {"everyone", "PRP"}, {"nobody", "PRP"},
    {"something", "PRP"}, {"anything", "PRP"}, {"everything", "PRP"},
    {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"}, {"its", "PRP$"},
    {"our", "PRP$"}, {"their", "PRP$"}, {"her", "PRP$"},
    // conjunctions
    {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"}, {"yet", "CC"},
    {"so", "CC"}, {"plus", "CC"},
    // modals, to, existential
    {"can", "MD"}, {"could", "MD"}, {"will", "MD"}, {"would", "MD"}, {"shall", "MD"},
    {"should", "MD"}, {"may", "MD"}, {"might", "MD"}, {"must", "MD"},
    {"can't", "MD"}, {"cannot", "MD"}, {"couldn't", "MD"}, {"won't", "MD"},
    {"wouldn't", "MD"}, {"shouldn't", "MD"}, {"to", "TO"}, {"there", "EX"},
    // wh words
    {"which", "WDT"}, {"whatever", "WDT"}, {"who", "WP"}, {"whom", "WP"},
    {"what", "WP"}, {"whoever", "WP"}, {"whose", "WP$"}, {"when", "WRB"},
    {"where", "WRB"}, {"why", "WRB"}, {"how", "WRB"}, {"whenever", "WRB"},
    {"wherever", "WRB"},
    // adverbs
    {"not", "RB"}, {"never", "RB"}, {"very", "RB"}, {"really", "RB"}, {"quite", "RB"},
    {"too", "RB"}, {"also", "RB"}, {"just", "RB"}, {"only", "RB"}, {"even", "RB"},
    {"still", "RB"}, {"almost", "RB"}, {"always", "RB"}, {"often", "RB"},
    {"sometimes", "RB"}, {"usually", "RB"}, {"rarely", "RB"}, {"seldom", "RB"},
    {"again", "RB"}, {"once", "RB"}, {"twice", "RB"}, {"here", "RB"}, {"now", "RB"},
    {"then", "RB"}, {"soon", "RB"}, {"already", "RB"}, {"perhaps", "RB"},
    {"maybe", "RB"}, {"rather", "RB"}, {"pretty", "RB"}, {"well", "RB"},
    {"enough", "RB"}, {"instead", "RB"}, {"however", "RB"}, {"anyway", "RB"},
    {"somewhat", "RB"}, {"indeed", "RB"}, {"far", "RB"}, {"away", "RB"},
    {"back", "RB"}, {"together", "RB"}, {"apart", "RB"}, {"alone", "RB"},
    {"especially", "RB"}, {"particularly", "RB"}, {"simply", "RB"}, {"truly", "RB"},
    {"nearly", "RB"}, {"barely", "RB"}, {"hardly", "RB"}, {"mostly", "RB"},
    {"somehow", "RB"}, {"somewhere", "RB"}, {"anywhere", "RB"}, {"nowhere", "RB"},
    {"everywhere", "RB"}, {"else", "RB"}, {"ever", "RB"}, {"nothing", "RB"},
    // numbers
    {"zero", "CD"}, {"one", "CD"}, {"two", "CD"}, {"three", "CD"}, {"four", "CD"},
    {"five", "CD"}, {"six", "CD"}, {"seven", "CD"}, {"eight", "CD"}, {"nine", "CD"},
    {"ten", "CD"}, {"eleven", "CD"}, {"twelve", "CD"}, {"twenty", "CD"},
    {"thirty", "CD"}, {"hundred", "CD"}, {"thousand", "CD"}, {"million", "CD"},
    // interjections
    {"oh", "UH"}, {"wow", "UH"}, {"hey", "UH"}, {"yeah", "UH"}, {"yes", "UH"},
    {"okay", "UH"}, {"ok", "UH"},
    // be / have / do
    {"be", "VB"}, {"am", "VBP"}, {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"},
    {"were", "VBD"}, {"been", "VBN"}, {"being", "VBG"}, {"have", "VBP"},
    {"has", "VBZ"}, {"had", "VBD"}, {"having", "VBG"}, {"do", "VBP"},
    {"does", "VBZ"}, {"did", "VBD"}, {"done", "VBN"}, {"doing", "VBG"},
    // negated contractions
    {"isn't", "VBZ"}, {"aren't", "VBP"}, {"wasn't", "VBD"}, {"weren't", "VBD"},
    {"don't", "VBP"}, {"doesn't", "VBZ"}, {"didn't", "VBD"}, {"ain't", "VBP"},
    // pronoun contractions kept whole by the tokenizer
    {"i'm", "PRP"}, {"i've", "PRP"}, {"i'd", "PRP"}, {"i'll", "PRP"},
    {"you're", "PRP"}, {"you've", "PRP"}, {"you'll", "PRP"}, {"he's", "PRP"},
    {"she's", "PRP"}, {"it's", "PRP"}, {"we're", "PRP"}, {"we've", "PRP"},
    {"we'll", "PRP"}, {"they're", "PRP"}, {"they've", "PRP"}, {"there's", "EX"},
    {"that's", "DT"}, {"what's", "WP"}, {"who's", "WP"}, {"let's", "VB"},
    // common verbs
    {"get", "VB"}, {"gets", "VBZ"}, {"got", "VBD"}, {"gotten", "VBN"},
    {"make", "VB"}, {"makes", "VBZ"}, {"made", "VBD"}, {"go", "VB"},
    {"goes", "VBZ"}, {"went", "VBD"}, {"gone", "VBN"}, {"see", "VB"},
    {"sees", "VBZ"}, {"saw", "VBD"}, {"seen", "VBN"}, {"seem", "VB"},
    {"seems", "VBZ"}, {"seemed", "VBD"}, {"come", "VB"}, {"comes", "VBZ"},
    {"came", "VBD"}, {"take", "VB"}, {"takes", "VBZ"}, {"took", "VBD"},
    {"taken", "VBN"}, {"know", "VB"}, {"knows", "VBZ"}, {"knew", "VBD"},
    {"known", "VBN"}, {"think", "VB"}, {"thinks", "VBZ"}, {"thought", "VBD"},
    {"say", "VB"}, {"says", "VBZ"}, {"said", "VBD"}, {"want", "VB"},
    {"wants", "VBZ"}, {"feel", "VB"}, {"feels", "VBZ"}, {"felt", "VBD"},
    {"find", "VB"}, {"finds", "VBZ"}, {"found", "VBD"}, {"give", "VB"},
    {"gives", "VBZ"}, {"gave", "VBD"}, {"given", "VBN"}, {"tell", "VB"},
    {"tells", "VBZ"}, {"told", "VBD"}, {"try", "VB"}, {"tries", "VBZ"},
    {"keep", "VB"}, {"keeps", "VBZ"}, {"kept", "VBD"}, {"become", "VB"},
    {"becomes", "VBZ"}, {"became", "VBD"}, {"leave", "VB"}, {"leaves", "VBZ"},
    {"left", "VBD"}, {"put", "VB"}, {"puts", "VBZ"}, {"mean", "VB"},
    {"means", "VBZ"}, {"meant", "VBD"}, {"let", "VB"}, {"lets", "VBZ"},
    {"begin", "VB"}, {"begins", "VBZ"}, {"began", "VBD"}, {"begun", "VBN"},
    {"turn", "VB"}, {"turns", "VBZ"}, {"happen", "VB"}, {"happens", "VBZ"},
    {"write", "VB"}, {"writes", "VBZ"}, {"wrote", "VBD"}, {"written", "VBN"},
    {"read", "VB"}, {"reads", "VBZ"}, {"hear", "VB"}, {"hears", "VBZ"},
    {"heard", "VBD"}, {"bring", "VB"}, {"brings", "VBZ"}, {"brought", "VBD"},
    {"sit", "VB"}, {"sits", "VBZ"}, {"sat", "VBD"}, {"set", "VB"}, {"sets", "VBZ"},
    {"believe", "VB"}, {"believes", "VBZ"}, {"expect", "VB"}, {"expects", "VBZ"},
    {"enjoy", "VB"}, {"enjoys", "VBZ"}, {"hate", "VB"}, {"hates", "VBZ"},
    {"watch", "VB"}, {"watches", "VBZ"}, {"use", "VB"}, {"uses", "VBZ"},
    {"call", "VB"}, {"calls", "VBZ"}, {"help", "VB"}, {"helps", "VBZ"},
    {"talk", "VB"}, {"talks", "VBZ"}, {"live", "VB"}, {"lives", "VBZ"},
    {"stop", "VB"}, {"stops", "VBZ"}, {"manage", "VB"}, {"manages", "VBZ"},
    {"deserve", "VB"}, {"deserves", "VBZ"}, {"stay", "VB"}, {"stays", "VBZ"},
    // review-domain nouns
    {"movie", "NN"}, {"film", "NN"}, {"story", "NN"}, {"plot", "NN"},
    {"character", "NN"}, {"characters", "NNS"}, {"actor", "NN"}, {"actors", "NNS"},
    {"actress", "NN"}, {"director", "NN"}, {"direction", "NN"}, {"script", "NN"},
    {"screenplay", "NN"}, {"scene", "NN"}, {"scenes", "NNS"}, {"dialogue", "NN"},
    {"cast", "NN"}, {"audience", "NN"}, {"performance", "NN"},
    {"performances", "NNS"}, {"role", "NN"}, {"roles", "NNS"}, {"camera", "NN"},
    {"cinematography", "NN"}, {"action", "NN"}, {"comedy", "NN"}, {"drama", "NN"},
    {"thriller", "NN"}, {"horror", "NN"}, {"ending", "NN"}, {"beginning", "NN"},
    {"sequel", "NN"}, {"stars", "NNS"}, {"hollywood", "NN"}, {"oscar", "NN"},
    {"minute", "NN"}, {"minutes", "NNS"}, {"hour", "NN"}, {"hours", "NNS"},
    {"year", "NN"}, {"years", "NNS"}, {"time", "NN"}, {"way", "NN"},
    {"thing", "NN"}, {"things", "NNS"}, {"man", "NN"}, {"woman", "NN"},
    {"men", "NNS"}, {"women", "NNS"}, {"people", "NNS"}, {"guy", "NN"},
    {"guys", "NNS"}, {"kid", "NN"}, {"kids", "NNS"}, {"life", "NN"},
    {"world", "NN"}, {"day", "NN"}, {"days", "NNS"}, {"night", "NN"},
    {"house", "NN"}, {"car", "NN"}, {"money", "NN"}, {"fact", "NN"},
    {"idea", "NN"}, {"point", "NN"}, {"problem", "NN"}, {"reason", "NN"},
    {"question", "NN"}, {"moment", "NN"}, {"moments", "NNS"}, {"part", "NN"},
    {"parts", "NNS"}, {"family", "NN"}, {"friend", "NN"}, {"friends", "NNS"},
    {"father", "NN"}, {"mother", "NN"}, {"son", "NN"}, {"daughter", "NN"},
    {"wife", "NN"}, {"husband", "NN"}, {"brother", "NN"}, {"eye", "NN"},
    {"eyes", "NNS"}, {"face", "NN"}, {"head", "NN"}, {"hand", "NN"},
    {"music", "NN"}, {"song", "NN"}, {"songs", "NNS"}, {"effects", "NNS"},
    {"sound", "NN"}, {"version", "NN"}, {"title", "NN"}, {"line", "NN"},
    {"lines", "NNS"}, {"joke", "NN"}, {"jokes", "NNS"}, {"war", "NN"},
    {"battle", "NN"}, {"game", "NN"}, {"name", "NN"}, {"number", "NN"},
    {"fan", "NN"}, {"fans", "NNS"}, {"review", "NN"}, {"reviews", "NNS"},
    {"critic", "NN"}, {"critics", "NNS"}, {"theater", "NN"}, {"screen", "NN"},
    {"book", "NN"}, {"novel", "NN"}, {"series", "NN"}, {"episode", "NN"},
    {"television", "NN"}, {"tv", "NN"}, {"video", "NN"}, {"art", "NN"},
    {"lot", "NN"}, {"lots", "NNS"}, {"bit", "NN"}, {"kind", "NN"},
    {"sort", "NN"}, {"type", "NN"}, {"example", "NN"}, {"scream", "NN"},
    {"budget", "NN"}, {"humor", "NN"}, {"style", "NN"}, {"tone", "NN"},
    {"mess", "NN"}, {"waste", "NN"}, {"piece", "NN"}, {"word", "NN"},
    {"words", "NNS"}, {"dog", "NN"}, {"cat", "NN"},
    // adjectives
    {"good", "JJ"}, {"bad", "JJ"}, {"great", "JJ"}, {"terrible", "JJ"},
    {"awful", "JJ"}, {"excellent", "JJ"}, {"wonderful", "JJ"}, {"superb", "JJ"},
    {"best", "JJS"}, {"worst", "JJS"}, {"better", "JJR"}, {"worse", "JJR"},
    {"new", "JJ"}, {"old", "JJ"}, {"young", "JJ"}, {"big", "JJ"}, {"small", "JJ"},
    {"little", "JJ"}, {"long", "JJ"}, {"short", "JJ"}, {"high", "JJ"},
    {"low", "JJ"}, {"real", "JJ"}, {"true", "JJ"}, {"whole", "JJ"},
    {"main", "JJ"}, {"same", "JJ"}, {"different", "JJ"}, {"difficult", "JJ"},
    {"easy", "JJ"}, {"hard", "JJ"}, {"funny", "JJ"}, {"boring", "JJ"},
    {"interesting", "JJ"}, {"entertaining", "JJ"}, {"exciting", "JJ"},
    {"amazing", "JJ"}, {"beautiful", "JJ"}, {"stupid", "JJ"}, {"dumb", "JJ"},
    {"silly", "JJ"}, {"smart", "JJ"}, {"clever", "JJ"}, {"brilliant", "JJ"},
    {"dazzling", "JJ"}, {"phenomenal", "JJ"}, {"fantastic", "JJ"},
    {"hideous", "JJ"}, {"unwatchable", "JJ"}, {"gripping", "JJ"},
    {"mesmerizing", "JJ"}, {"riveting", "JJ"}, {"spectacular", "JJ"},
    {"cool", "JJ"}, {"awesome", "JJ"}, {"thrilling", "JJ"}, {"badass", "JJ"},
    {"moving", "JJ"}, {"cliched", "JJ"}, {"slow", "JJ"}, {"perfect", "JJ"},
    {"poor", "JJ"}, {"nice", "JJ"}, {"fine", "JJ"}, {"dull", "JJ"},
    {"flat", "JJ"}, {"predictable", "JJ"}, {"original", "JJ"}, {"special", "JJ"},
    {"typical", "JJ"}, {"classic", "JJ"}, {"modern", "JJ"}, {"dark", "JJ"},
    {"strong", "JJ"}, {"weak", "JJ"}, {"simple", "JJ"}, {"obvious", "JJ"},
    {"clear", "JJ"}, {"certain", "JJ"}, {"sure", "JJ"}, {"able", "JJ"},
    {"possible", "JJ"}, {"impossible", "JJ"}, {"likely", "JJ"}, {"full", "JJ"},
    {"empty", "JJ"}, {"right", "JJ"}, {"wrong", "JJ"}, {"major", "JJ"},
    {"minor", "JJ"}, {"serious", "JJ"}, {"violent", "JJ"}, {"romantic", "JJ"},
    {"final", "JJ"}, {"first", "JJ"}, {"second", "JJ"}, {"third", "JJ"},
    {"last", "JJ"}, {"next", "JJ"}, {"early", "JJ"}, {"late", "JJ"},
    {"recent", "JJ"}, {"previous", "JJ"}, {"entire", "JJ"}, {"several", "JJ"},
    {"many", "JJ"}, {"few", "JJ"}, {"much", "JJ"}, {"more", "JJR"},
    {"most", "JJS"}, {"less", "JJR"}, {"least", "JJS"}, {"own", "JJ"},
    {"top", "JJ"}, {"worth", "JJ"}, {"cheap", "JJ"}, {"fresh", "JJ"},
    {"familiar", "JJ"}, {"usual", "JJ"}, {"strange", "JJ"}, {"weird", "JJ"},
    {"odd", "JJ"}, {"crazy", "JJ"}, {"insane", "JJ"}, {"lame", "JJ"},
    {"mediocre", "JJ"}, {"bland", "JJ"}, {"decent", "JJ"}, {"solid", "JJ"},
    {"subtle", "JJ"}, {"quiet", "JJ"}, {"loud", "JJ"}, {"fast", "JJ"},
    {"quick", "JJ"}, {"deep", "JJ"}, {"rich", "JJ"}, {"sexy", "JJ"},
    {"scary", "JJ"}, {"creepy", "JJ"}, {"gritty", "JJ"}, {"campy", "JJ"},
    {"cheesy", "JJ"}, {"corny", "JJ"}, {"sappy", "JJ"}, {"gory", "JJ"},
    {"happy", "JJ"}, {"sad", "JJ"}, {"huge", "JJ"}, {"other", "JJ"},
};

// Words whose noun/verb reading flips with context.
constexpr const char* kNounVerbAmbiguous[] = {
    "love", "like", "work", "play", "show", "star", "end", "look", "run",
    "act", "laugh", "walk", "dance", "dream", "smile", "kiss", "fight",
    "cut", "hit", "miss", "deal", "start", "cast", "waste",
};

struct SuffixRule {
  const char* suffix;
  const char* tag;
  size_t min_len;  // minimum whole-word length for the rule to apply
};

// Checked in order; first match wins.
constexpr SuffixRule kSuffixRules[] = {
    {"ness", "NN", 6},  {"ment", "NN", 6},   {"tion", "NN", 6}, {"sion", "NN", 6},
    {"ance", "NN", 6},  {"ence", "NN", 6},   {"ship", "NN", 6}, {"hood", "NN", 6},
    {"isms", "NNS", 6}, {"ism", "NN", 5},    {"ity", "NN", 5},  {"ogy", "NN", 5},
    {"ious", "JJ", 6},  {"eous", "JJ", 6},   {"ous", "JJ", 5},  {"ful", "JJ", 5},
    {"ish", "JJ", 5},   {"ive", "JJ", 5},    {"able", "JJ", 6}, {"ible", "JJ", 6},
    {"less", "JJ", 6},  {"ical", "JJ", 6},   {"ial", "JJ", 5},  {"ic", "JJ", 4},
    {"ary", "JJ", 5},   {"ily", "RB", 5},    {"ly", "RB", 4},   {"ing", "VBG", 5},
    {"ied", "VBD", 5},  {"ed", "VBD", 4},    {"est", "JJS", 5}, {"ers", "NNS", 5},
    {"er", "NN", 4},    {"al", "JJ", 5},
};

bool all_digits_punct(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9')
      digit = true;
    else if (c != ',' && c != '.')
      return false;
  }
  return digit;
}

}  // namespace

BuiltinTagger::BuiltinTagger() {
  lexicon_.reserve(std::size(kLexicon) * 2);
  for (const auto& e : kLexicon) lexicon_.emplace(e.word, e.tag);
  for (const char* w : kNounVerbAmbiguous) noun_verb_ambiguous_.insert(w);
}

std::optional<std::string> BuiltinTagger::tag(std::string_view surface,
                                              std::string_view prev_surface,
                                              std::string_view prev_tag) const {
  (void)prev_surface;
  std::string word(surface);

  if (noun_verb_ambiguous_.count(word)) {
    bool noun_context = prev_tag == "DT" || prev_tag == "PRP$" || prev_tag == "JJ" ||
                        prev_tag == "JJR" || prev_tag == "JJS" || prev_tag == "CD";
    if (noun_context) return "NN";
    if (prev_tag == "TO" || prev_tag == "MD") return "VB";
    if (prev_tag == "PRP") return "VBP";
  }

  auto it = lexicon_.find(word);
  if (it != lexicon_.end()) return it->second;

  if (!word.empty() && word[0] >= '0' && word[0] <= '9' && all_digits_punct(word)) return "CD";

  // possessive form of a regular word
  if (word.size() > 2 && word.compare(word.size() - 2, 2, "'s") == 0) return "NN";

  for (const auto& rule : kSuffixRules) {
    size_t len = std::char_traits<char>::length(rule.suffix);
    if (word.size() >= rule.min_len && word.size() > len &&
        word.compare(word.size() - len, len, rule.suffix) == 0)
      return rule.tag;
  }

  if (word.size() >= 4 && word.back() == 's' && word[word.size() - 2] != 's') return "NNS";

  return std::nullopt;
}

}  // namespace polarity
