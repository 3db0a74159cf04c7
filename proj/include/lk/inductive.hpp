#pragma once
#include "lk/environment.hpp"

namespace lk {

/** \brief Root component of the names given to auxiliary types while elaborating nested inductives.
    Declarations may not use it. */
char const * nested_aux_root();

/** \brief Check an inductive declaration and add its types, constructors and recursors.

    Nested occurrences (the block's types appearing as parameters of an existing inductive) are
    first translated into auxiliary mutual types, checked together with the block, and then
    replaced back. Recursors of auxiliary types are named <tt>I.rec_1</tt>, <tt>I.rec_2</tt>, ...
    after the first type \c I of the block. */
environment add_inductive(environment const & env, inductive_decl const & d, check_options const & opts = {},
                          check_stats * stats = nullptr);

}
