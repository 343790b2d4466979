#include "dirac/corpus.hpp"

namespace dirac {

namespace {

const CorpusModel kModels[] = {
#include "corpus_models.inc"
};

} // namespace

std::span<const CorpusModel> corpus_models() {
    return std::span<const CorpusModel>(kModels, sizeof(kModels) / sizeof(kModels[0]));
}

const CorpusModel* corpus_find(const std::string& name) {
    for (const CorpusModel& m : corpus_models())
        if (name == m.name)
            return &m;
    return nullptr;
}

} // namespace dirac
