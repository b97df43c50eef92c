"""
Graphviz DOT text for families and schemes.

Tee links are solid undirected edges from each end to the center; dees are
dashed directed edges from origin to end.
"""


def _quote(text):
    return '"' + str(text).replace('"', '\\"') + '"'


def family_to_dot(F, name='family'):
    lines = [f'digraph {_quote(name)} {{']
    for v in sorted(F.vertices):
        lines.append(f'  {v} [label="e{v}"];')
    for m in F.members:
        if hasattr(m, 'center'):
            for end in m.ends:
                lines.append(f'  {end} -> {m.center} [dir=none, style=solid, tooltip={_quote(m)}];')
        else:
            lines.append(f'  {m.origin} -> {m.end} [style=dashed];')
    lines.append('}')
    return '\n'.join(lines)


def clusters_to_dot(families, cards=None):
    """All families as clusters of one graph, vertex names prefixed by the family index."""
    lines = ['digraph clusters {']
    for index, F in enumerate(families):
        label = str(cards[index]) if cards else str(F)
        lines.append(f'  subgraph cluster_{index} {{')
        lines.append(f'    label={_quote(label)};')
        for v in sorted(F.vertices):
            lines.append(f'    c{index}_{v} [label="e{v}"];')
        for m in F.members:
            if hasattr(m, 'center'):
                for end in m.ends:
                    lines.append(f'    c{index}_{end} -> c{index}_{m.center} [dir=none, style=solid];')
            else:
                lines.append(f'    c{index}_{m.origin} -> c{index}_{m.end} [style=dashed];')
        lines.append('  }')
    lines.append('}')
    return '\n'.join(lines)


def scheme_to_dot(s, name='scheme'):
    lines = [f'digraph {_quote(name)} {{']
    counter = [0]

    def visit(node):
        me = counter[0]
        counter[0] += 1
        style = ', style=dashed' if node.flagged else ''
        lines.append(f'  n{me} [label={_quote(node.label or "node")}, shape=box{style}];')
        for child in node.children:
            lines.append(f'  n{me} -> n{visit(child)};')
        return me

    visit(s)
    lines.append('}')
    return '\n'.join(lines)
