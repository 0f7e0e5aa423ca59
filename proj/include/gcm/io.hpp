#ifndef GCM_IO_HPP
#define GCM_IO_HPP

#include <string>

#include "json.hpp"

#include "gcm/cgx.hpp"
#include "gcm/corr.hpp"
#include "gcm/diagram.hpp"
#include "gcm/mn.hpp"
#include "gcm/selfsim.hpp"

namespace gcm {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// {"format_version": "1", "kind": ..., "payload": ...}
struct Document {
    std::string kind;
    Json payload;
};

// ParseError on malformed text, SchemaError on a bad envelope or unknown kind
Document parse_document(const std::string& text);
Document read_document(const std::string& path);
// sorted keys, two-space indent, trailing newline
std::string dump_document(const Document& doc);
std::string dump_json(const Json& j);

// Payload codecs. Names are the ids; finite maps are arrays of [key, value] pairs.
// Readers throw SchemaError on missing fields or unresolved names.
FinCategory category_from_json(const Json& j);
Json category_to_json(const FinCategory& c);

FinGroup group_from_json(const Json& j);
Json group_to_json(const FinGroup& g);

// accepts {"group": ...}, {"space": [...]} or the category form
FinGroupoid groupoid_from_json(const Json& j);
Json groupoid_to_json(const FinGroupoid& g);

// elements, left, right; unit entries may be omitted
Correspondence correspondence_body_from_json(const Json& j, GroupoidPtr H, GroupoidPtr G);
Json correspondence_body_to_json(const Correspondence& c);
Correspondence correspondence_from_json(const Json& j);
Json correspondence_to_json(const Correspondence& c);

Diagram diagram_from_json(const Json& j);
Json diagram_to_json(const Diagram& d);

ComplexOfGroups cgx_from_json(const Json& j);
Json cgx_to_json(const ComplexOfGroups& c);

// accepts the groupoid form or {"group", "letters", "action"}
SelfSimilar selfsim_from_json(const Json& j);
Json selfsim_to_json(const SelfSimilar& s);

struct MNDocument {
    int m = 1, n = 1;
    std::vector<std::string> names;
    MNAction action;
};
MNDocument mn_from_json(const Json& j);
Json mn_to_json(const MNDocument& d);

struct ActionDocument {
    Diagram diagram;
    std::vector<std::string> names;
    FAction action;
};
// generating arrows are read; the rest is completed through μ
ActionDocument action_from_json(const Json& j);
Json action_to_json(const ActionDocument& a);

}  // namespace gcm

#endif
