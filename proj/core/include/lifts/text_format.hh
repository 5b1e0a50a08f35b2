#pragma once

#include <lifts/homomorphism.hh>
#include <lifts/signature.hh>
#include <lifts/structure.hh>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lifts
{
    /// Constraint lines attached to one named structure of a document.
    struct StructureConstraints
    {
        std::string structure;
        PartialConstraints partial;
    };

    /**
     * Everything a structure file may contain. Documents are line-oriented
     * with '#' comments:
     *
     *   signature G { E/2 C1/1 lift }
     *   structure K : G { universe = {a, b} ; E = {(a,b)} ; C1 = {a} }
     *   mode = injective
     *   constraints K { a != b ; tuple E(b,a) free }
     */
    struct Document
    {
        std::vector<std::pair<std::string, SignaturePtr>> signatures;
        std::vector<std::pair<std::string, Structure>> structures;
        std::optional<HomKind> mode;
        std::vector<StructureConstraints> constraints;

        auto signature(std::string_view name) const -> SignaturePtr;
        auto structure(std::string_view name) const -> const Structure *;
    };

    /// Throws ParseError with a line and column on any syntax or semantic problem.
    auto parse_document(std::string_view text) -> Document;

    /// The single structure of a document; a ParseError unless there is exactly one.
    auto parse_structure(std::string_view text) -> Structure;

    auto write_signature(const Signature & sig, std::string_view name) -> std::string;

    /// Elements and tuples are emitted sorted; element names are kept when present.
    auto write_structure(const Structure & s, std::string_view name, std::string_view signature_name) -> std::string;

    /// A self-contained document: the signature block followed by the structure.
    auto write_standalone(const Structure & s, std::string_view name) -> std::string;

    auto write_document(const Document & doc) -> std::string;

    auto read_file(const std::string & path) -> std::string;
}
