#ifndef DIRAC_CORPUS_HPP
#define DIRAC_CORPUS_HPP

#include <span>
#include <string>

namespace dirac {

/// A bundled model: name and the full model-file content.
struct CorpusModel {
    const char* name;
    const char* content;
};

std::span<const CorpusModel> corpus_models();
const CorpusModel* corpus_find(const std::string& name);

} // namespace dirac

#endif
