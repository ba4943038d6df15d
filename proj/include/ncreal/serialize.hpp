#pragma once

#include <string>

#include "json.hpp"
#include "ncreal/realization.hpp"

namespace ncreal::io {

using json = nlohmann::json;

json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const json& j);

json to_json(const MatrixLinearMap& a);
MatrixLinearMap linmap_from_json(const json& j);

json to_json(const DescriptorRealization& r);
json to_json(const FMRealization& r);

struct AnyRealization {
    bool is_fm = false;
    DescriptorRealization desc;
    FMRealization fm;
    // Descriptor form (FM inputs are converted).
    DescriptorRealization descriptor() const;
};
AnyRealization realization_from_json(const json& j);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ncreal::io
