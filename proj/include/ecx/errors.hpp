/*!
  \file errors.hpp
  \brief Exception types shared by the ecx library
*/

#pragma once

#include <stdexcept>
#include <string>

namespace ecx
{

/*! \brief A structural or argument error (malformed circuit, bad input length, bad file). */
class domain_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A configured size cap (variables, gates) would be exceeded. */
class cap_exceeded : public domain_error
{
public:
  using domain_error::domain_error;
};

/*! \brief A text format could not be parsed; carries the offending line number when known. */
class parse_error : public domain_error
{
public:
  parse_error( std::string const& what, std::size_t line = 0u )
      : domain_error( line == 0u ? what : "line " + std::to_string( line ) + ": " + what ),
        line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace ecx
