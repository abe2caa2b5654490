/** One color per category for highlight backgrounds and the legend. */

export const CATEGORY_COLORS: Record<string, string> = {
  'Descriptor': '#cdeac0',
  'Material-target': '#ffd6a5',
  'Material-intermedium': '#fdffb6',
  'Operation': '#a0c4ff',
  'Device': '#bdb2ff',
  'Brand': '#ffc6ff',
  'Property-time': '#caffbf',
  'Value': '#e4e4e4',
  'Property-pressure': '#9bf6ff',
  'Material-others': '#ffdf80',
  'Material-recipe': '#ffadad',
  'Property-temperature': '#ffb5a7',
  'Property-rate': '#b8e0d2',
};

export function colorFor(category: string): string {
  return CATEGORY_COLORS[category] ?? '#dddddd';
}
