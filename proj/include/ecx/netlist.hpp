/*!
  \file netlist.hpp
  \brief Netlist text format and Graphviz export

  Netlist grammar (one statement per line, `#` starts a comment):

      inputs N
      gK = IN i | CONST 0 | CONST 1 | AND gA gB | OR gA gB | NOT gA
      out gK

  Operands must be defined on an earlier line. Gate names are `g` followed
  by digits; they are renumbered densely in definition order when read.
*/

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "circuit.hpp"

namespace ecx
{

namespace detail
{

inline std::vector<std::string_view> split_ws( std::string_view s )
{
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while ( i < s.size() )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' || s[i] == '\r' ) )
    {
      ++i;
    }
    auto const start = i;
    while ( i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r' )
    {
      ++i;
    }
    if ( i > start )
    {
      toks.push_back( s.substr( start, i - start ) );
    }
  }
  return toks;
}

inline bool parse_uint( std::string_view s, uint32_t& v )
{
  if ( s.empty() )
  {
    return false;
  }
  auto const* end = s.data() + s.size();
  auto const [ptr, ec] = std::from_chars( s.data(), end, v );
  return ec == std::errc{} && ptr == end;
}

inline bool is_gate_name( std::string_view s )
{
  if ( s.size() < 2u || s[0] != 'g' )
  {
    return false;
  }
  return std::all_of( s.begin() + 1, s.end(), []( char ch ) { return ch >= '0' && ch <= '9'; } );
}

} // namespace detail

inline circuit read_netlist( std::istream& in )
{
  std::unordered_map<std::string, gate_id> names;
  std::vector<gate> gates;
  std::optional<uint32_t> num_vars;
  std::optional<gate_id> output;

  auto operand = [&]( std::string_view tok, std::size_t line ) {
    if ( !detail::is_gate_name( tok ) )
    {
      throw parse_error( "malformed gate name '" + std::string( tok ) + "'", line );
    }
    auto it = names.find( std::string( tok ) );
    if ( it == names.end() )
    {
      throw parse_error( "gate '" + std::string( tok ) + "' used before its definition", line );
    }
    return it->second;
  };

  std::string raw;
  std::size_t line = 0;
  while ( std::getline( in, raw ) )
  {
    ++line;
    std::string_view text = raw;
    if ( auto hash = text.find( '#' ); hash != std::string_view::npos )
    {
      text = text.substr( 0, hash );
    }
    auto const toks = detail::split_ws( text );
    if ( toks.empty() )
    {
      continue;
    }
    if ( output )
    {
      throw parse_error( "statement after 'out'", line );
    }
    if ( !num_vars )
    {
      uint32_t n = 0;
      if ( toks.size() != 2u || toks[0] != "inputs" || !detail::parse_uint( toks[1], n ) )
      {
        throw parse_error( "expected 'inputs N'", line );
      }
      num_vars = n;
      continue;
    }
    if ( toks[0] == "out" )
    {
      if ( toks.size() != 2u )
      {
        throw parse_error( "expected 'out gK'", line );
      }
      output = operand( toks[1], line );
      continue;
    }
    if ( toks.size() < 3u || toks[1] != "=" )
    {
      throw parse_error( "expected 'gK = OP ...'", line );
    }
    if ( !detail::is_gate_name( toks[0] ) )
    {
      throw parse_error( "malformed gate name '" + std::string( toks[0] ) + "'", line );
    }
    if ( names.contains( std::string( toks[0] ) ) )
    {
      throw parse_error( "duplicate definition of '" + std::string( toks[0] ) + "'", line );
    }
    auto const op = toks[2];
    auto const args = toks.size() - 3u;
    auto expect_args = [&]( std::size_t k ) {
      if ( args != k )
      {
        throw parse_error( std::string( op ) + " takes " + std::to_string( k ) + " operand(s), got " + std::to_string( args ), line );
      }
    };
    gate gt;
    if ( op == "IN" )
    {
      expect_args( 1u );
      uint32_t v = 0;
      if ( !detail::parse_uint( toks[3], v ) || v >= *num_vars )
      {
        throw parse_error( "input index '" + std::string( toks[3] ) + "' out of range", line );
      }
      gt = gate::input( v );
    }
    else if ( op == "CONST" )
    {
      expect_args( 1u );
      if ( toks[3] != "0" && toks[3] != "1" )
      {
        throw parse_error( "constant must be 0 or 1", line );
      }
      gt = gate::constant( toks[3] == "1" );
    }
    else if ( op == "AND" || op == "OR" )
    {
      expect_args( 2u );
      auto const x = operand( toks[3], line );
      auto const y = operand( toks[4], line );
      gt = op == "AND" ? gate::and_of( x, y ) : gate::or_of( x, y );
    }
    else if ( op == "NOT" )
    {
      expect_args( 1u );
      gt = gate::not_of( operand( toks[3], line ) );
    }
    else
    {
      throw parse_error( "unknown gate type '" + std::string( op ) + "'", line );
    }
    names.emplace( std::string( toks[0] ), static_cast<gate_id>( gates.size() ) );
    gates.push_back( gt );
  }
  if ( !num_vars )
  {
    throw parse_error( "missing 'inputs N' header" );
  }
  if ( !output )
  {
    throw parse_error( "missing 'out' statement" );
  }
  return circuit( *num_vars, std::move( gates ), *output );
}

inline circuit read_netlist( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  return read_netlist( in );
}

inline void write_netlist( circuit const& c, std::ostream& os )
{
  os << "inputs " << c.num_vars() << '\n';
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    os << 'g' << g << " = ";
    switch ( gt.kind )
    {
    case gate_kind::input:
      os << "IN " << gt.a;
      break;
    case gate_kind::constant:
      os << "CONST " << gt.a;
      break;
    case gate_kind::and_:
      os << "AND g" << gt.a << " g" << gt.b;
      break;
    case gate_kind::or_:
      os << "OR g" << gt.a << " g" << gt.b;
      break;
    case gate_kind::not_:
      os << "NOT g" << gt.a;
      break;
    }
    os << '\n';
  }
  os << "out g" << c.output() << '\n';
}

inline std::string to_netlist( circuit const& c )
{
  std::ostringstream os;
  write_netlist( c, os );
  return os.str();
}

/*!
  \brief One node per gate (shape by kind, output doubly outlined) and one
  edge per wire, ordered by gate id. Inputs are labelled x1, x2, ... as in
  decision tree text.
*/
inline void write_dot( circuit const& c, std::ostream& os )
{
  os << "digraph circuit {\n";
  os << "  rankdir=BT;\n";
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    os << "  g" << g << " [";
    switch ( gt.kind )
    {
    case gate_kind::input:
      os << "label=\"x" << gt.a + 1u << "\", shape=box";
      break;
    case gate_kind::constant:
      os << "label=\"" << gt.a << "\", shape=diamond";
      break;
    case gate_kind::and_:
      os << "label=\"AND\", shape=invhouse";
      break;
    case gate_kind::or_:
      os << "label=\"OR\", shape=invtriangle";
      break;
    case gate_kind::not_:
      os << "label=\"NOT\", shape=circle";
      break;
    }
    if ( g == c.output() )
    {
      os << ", peripheries=2";
    }
    os << "];\n";
  }
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    if ( gt.fanin_size() >= 1u )
    {
      os << "  g" << gt.a << " -> g" << g << ";\n";
    }
    if ( gt.fanin_size() == 2u )
    {
      os << "  g" << gt.b << " -> g" << g << ";\n";
    }
  }
  os << "}\n";
}

inline std::string to_dot( circuit const& c )
{
  std::ostringstream os;
  write_dot( c, os );
  return os.str();
}

} // namespace ecx
