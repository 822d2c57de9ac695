#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itl
{

// Root of every error raised by the toolkit. Rejections and falsifications are
// not errors; they are reported through result values.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Byte offsets into the text being parsed.
struct source_span
{
    std::size_t begin = 0;
    std::size_t end = 0;
};

class parse_error : public error
{
    source_span _span;
    std::string _expected;

public:
    parse_error( const std::string& message, source_span span, std::string expected = {} )
        : error{ message }, _span{ span }, _expected{ std::move( expected ) } {}

    [[nodiscard]] source_span span() const { return _span; }
    [[nodiscard]] const std::string& expected() const { return _expected; }
};

// The order relation of a poset is not reflexive, antisymmetric and transitive.
class malformed_order : public error
{
public:
    using error::error;
};

// A structure or valuation violates the invariants of its type.
class invalid_structure : public error
{
public:
    using error::error;
};

class continuity_required : public error
{
public:
    using error::error;
};

class domain_not_invariant : public error
{
public:
    using error::error;
};

class missing_metavariable : public error
{
public:
    using error::error;
};

class mixed_boxes : public error
{
public:
    using error::error;
};

class unknown_logic : public error
{
public:
    using error::error;
};

class bound_too_large : public error
{
public:
    using error::error;
};

class undetermined_extension : public error
{
public:
    using error::error;
};

class corpus_error : public error
{
public:
    using error::error;
};

class unknown_entry : public corpus_error
{
public:
    using corpus_error::corpus_error;
};

// No readable corpus index where one was expected.
class corpus_missing : public corpus_error
{
public:
    using corpus_error::corpus_error;
};

} // namespace itl
