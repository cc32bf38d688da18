"""Grammars shared across the test modules.

``EXAMPLES`` holds the worked examples; ``WELL_FORMED`` adds more grammars that
exercise every construct, each paired with the alphabet used to generate
inputs.
"""

from cpeg import parse_grammar

VAL = "Val = { [0-9]+ #Int }"

EXAMPLES = {
    "Val": VAL,
    "Prod2": "Prod2 = { Val '*' Val #Mul }\n" + VAL,
    "ProdM": "ProdM = { Val ('*' Val)* #Mul }\n" + VAL,
    "Prod": "Prod = { Val ('*' Prod) #Mul } / Val\n" + VAL,
    "ProdL": "ProdL = Val (^{ '*' Val #Mul })*\n" + VAL,
    "Prod2Fold": "Prod2 = Val ^{ '*' Val #Mul }\n" + VAL,
    # the typing example: single-digit values, fold label Prod
    "Typed": "Prod = Val (^{ '*' Val #Prod })*\nVal = { [0-9] #Int }",
}

# ProdL written with left recursion, which PEGs cannot run
PROD_LEFT_RECURSIVE = "ProdL = { (ProdL / Val) '*' Val #Mul }\n" + VAL

# well-formedness examples, with e, e1, e2, e' instantiated as terminals
WF_EXAMPLES = {
    "not-tail-then-capture": ("A = {'x' #L1} A {'y' #L2} / 'e'", False),
    "tail": ("A = {'x' #L1} A / 'e'", True),
    "then-terminal": ("A = {'x' #L1} A 'a' / 'e'", True),
    "mutual": ("A = {'x' #L1} B 'a' / 'e'\nB = {'y' #L2} A / 'f'", True),
}

DIGITS = "12*"

WELL_FORMED = {
    "Val": (EXAMPLES["Val"], DIGITS),
    "Prod2": (EXAMPLES["Prod2"], DIGITS),
    "ProdM": (EXAMPLES["ProdM"], DIGITS),
    "Prod": (EXAMPLES["Prod"], DIGITS),
    "ProdL": (EXAMPLES["ProdL"], DIGITS),
    "Prod2Fold": (EXAMPLES["Prod2Fold"], DIGITS),
    "Typed": (EXAMPLES["Typed"], DIGITS),
    "tail": (WF_EXAMPLES["tail"][0], "xe"),
    "then-terminal": (WF_EXAMPLES["then-terminal"][0], "xea"),
    "mutual": (WF_EXAMPLES["mutual"][0], "xyaef"),
    "arith": ("""
        Expr   = Term (^{ [+\\-] Term #Add })*
        Term   = Factor (^{ '*' Factor #Mul })*
        Factor = { [0-9]+ #Num } / '(' Expr ')'
    """, "1+*()"),
    "list": ("""
        List  = { '[' (Item (',' Item)*)? ']' #List }
        Item  = List / { 'a' #Atom } / { 'b' #Atom }
    """, "[],ab"),
    "kv": ("""
        Pairs = { Pair* #Obj }
        Pair  = { Key '=' Value ';' #Pair }
        Key   = { [ab]+ #Key }
        Value = { [0-9] #Num } / { '(' Pairs ')' #Nested }
    """, "ab=1;()"),
    "optional-fold": ("""
        Cmp = Sum (^{ '<' Sum #Lt })?
        Sum = { 'n' #N } (^{ '+' { 'n' #N } #Add })*
    """, "n+<"),
    "fold-choice": ("""
        Op = { 'a' #A } (^{ '+' { 'a' #A } #Plus } / ^{ '-' { 'a' #A } #Minus })
    """, "a+-"),
    "fold-plus": ("""
        Chain = { 'a' #A } (^{ '.' { 'a' #A } #Dot })+
    """, "a."),
    "predicates": ("""
        Words = { Word (' ' Word)* #Words }
        Word  = !'q' { (!' ' .)+ #W } &(' ' / !.)
    """, "ab q"),
    "strings-and-nodes": ("""
        S = 'x' { 'a'* #A } 'y' { T #B } / 'z'*
        T = 'b' T / ''
    """, "xyabz"),
}


def load(name):
    return parse_grammar(WELL_FORMED[name][0])


# guarded global sets in the text form, root type on the last line
TYPES = [
    "Empty",
    "A[Empty]",
    "B[Empty]",
    "A[Empty] | B[Empty]",
    "A[Empty], B[Empty]",
    "A[Empty]*",
    "(A[Empty] | B[Empty])*",
    "A[B[Empty]]",
    "A[B[Empty]*]",
    "A[Empty], A[Empty]*",
    "A[Empty] | Empty",
    "Empty, A[Empty]",
    "A[Empty]*, B[Empty]",
    "A[A[Empty] | Empty]",
    "B[A[Empty], A[Empty]]",
    "type X = A[X] | Empty\nX",
    "type X = A[X] | B[Empty]\nX",
    "type X = A[Empty], X | Empty\nX",
    "type X = Y | B[Empty]\ntype Y = A[X]\nX",
    "type X = A[Y]\ntype Y = B[X] | Empty\nX*",
    "type X1 = X2\ntype X2 = B[X2, Empty, X4] | X3\ntype X3 = A[Empty]\ntype X4 = A[Empty]\nX1",
    "type X = (A[Empty] | B[X])*\nA[X]",
    "type X = B[Empty], X | A[Empty]\nX, X",
    "type X = A[X*]\nX | B[Empty]",
]


# small grammars over {a, b} for the big-step rule search
ORACLE_GRAMMARS = {
    "seq-alt": "S = 'a' 'b' / 'a' / ''",
    "rep-cap": "S = { 'a'* #A } { 'b' #B }*",
    "not": "S = !'b' { . #X } / 'b' 'b'",
    "fold": "S = { 'a' #A } (^{ 'b' { 'a' #A } #F })*",
    "fold-nested": "S = ({ 'a' #A } / { 'b' #B }) (^{ ({ 'a' #A } / 'b') #F })*",
    "recursive": "S = { 'a' #L } S / 'b'",
    "mutual": "S = 'a' T / { 'b' #B }\nT = { 'b' #T } S / ''",
    "fold-in-capture": "S = { 'a' (^{ 'a' #F })* 'b'? #W }",
    "seq3": "S = 'a' 'a' 'b'",
    "capture-fails": "S = { 'a' 'b' #L } / { 'b' #M } 'a'",
}
